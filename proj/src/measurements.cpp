#include "bellnet/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellnet {

namespace {

constexpr double kPovmTol = 1e-10;
constexpr double kProbCutoff = 1e-12;

}  // namespace

Povm make_povm(std::vector<Operator> effects) {
    if (effects.empty()) throw std::invalid_argument("make_povm: no effects");
    const std::vector<int>& dims = effects[0].dims;
    Mat sum = Mat::Zero(effects[0].dim(), effects[0].dim());
    for (const Operator& e : effects) {
        if (e.dims != dims) throw std::invalid_argument("make_povm: effect dimensions differ");
        if (hermiticity_error(e) > kPovmTol)
            throw std::invalid_argument("make_povm: effect is not Hermitian");
        Eigen::SelfAdjointEigenSolver<Mat> solver(e.entries);
        if (solver.eigenvalues().minCoeff() < -kPovmTol)
            throw std::invalid_argument("make_povm: effect is not positive semidefinite");
        sum += e.entries;
    }
    if ((sum - Mat::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff() > kPovmTol)
        throw std::invalid_argument("make_povm: effects do not sum to the identity");
    return Povm{std::move(effects)};
}

MeasurementAssignment make_assignment(std::vector<std::vector<Povm>> per_party) {
    if (per_party.empty()) throw std::invalid_argument("make_assignment: no parties");
    const std::size_t m = per_party[0].size();
    if (m == 0) throw std::invalid_argument("make_assignment: party with no settings");
    const std::size_t r = per_party[0][0].effects.size();
    for (const auto& settings : per_party) {
        if (settings.size() != m)
            throw std::invalid_argument("make_assignment: setting counts differ across parties");
        for (const Povm& povm : settings)
            if (povm.effects.size() != r)
                throw std::invalid_argument("make_assignment: outcome counts differ");
    }
    return MeasurementAssignment{std::move(per_party)};
}

Povm projective(const std::vector<int>& dims, const Mat& basis) {
    const int d = product_dim(dims);
    if (basis.rows() != d || basis.cols() != d)
        throw std::invalid_argument("projective: basis must be complete");
    if ((basis.adjoint() * basis - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > kPovmTol)
        throw std::invalid_argument("projective: basis is not orthonormal");
    std::vector<Operator> effects;
    effects.reserve(d);
    for (int k = 0; k < d; ++k)
        effects.emplace_back(dims, Mat(basis.col(k) * basis.col(k).adjoint()));
    return Povm{std::move(effects)};
}

DichotomicSimulation dichotomic_to_projective(const Operator& m0) {
    Spectrum spec = hermitian_eig(m0);
    for (int k = 0; k < spec.eigenvalues.size(); ++k) {
        const double lam = spec.eigenvalues[k];
        if (lam < -kPovmTol || lam > 1.0 + kPovmTol)
            throw std::invalid_argument(
                "dichotomic_to_projective: element is not between 0 and the identity");
    }
    DichotomicSimulation sim;
    sim.basis = spec.eigenvectors;
    sim.response = spec.eigenvalues.cwiseMax(0.0).cwiseMin(1.0);
    return sim;
}

double simulate_prob0(const DichotomicSimulation& sim, const Operator& rho) {
    if (rho.dim() != sim.basis.rows())
        throw std::invalid_argument("simulate_prob0: dimension mismatch");
    double p = 0.0;
    for (int k = 0; k < sim.response.size(); ++k) {
        const Vec phi = sim.basis.col(k);
        p += sim.response[k] * (phi.adjoint() * rho.entries * phi)(0, 0).real();
    }
    return p;
}

MeasureResult measure_and_condition_subsystems(const DensityState& state,
                                               const Operator& effect,
                                               const std::vector<int>& positions) {
    const Operator e_full = embed(effect, positions, state.op.dims);
    const double prob = trace_product(e_full.entries, state.op.entries).real();
    MeasureResult result;
    result.probability = std::max(prob, 0.0);
    if (result.probability < kProbCutoff) {
        result.probability = 0.0;
        return result;
    }

    const Operator k_full = embed(hermitian_sqrt(effect), positions, state.op.dims);
    Mat post = k_full.entries * state.op.entries * k_full.entries.adjoint();

    std::vector<int> keep;
    std::vector<std::string> labels;
    for (int k = 0; k < state.op.num_subsystems(); ++k)
        if (std::find(positions.begin(), positions.end(), k) == positions.end()) {
            keep.push_back(k);
            labels.push_back(state.parties[k]);
        }
    if (keep.empty())
        throw std::invalid_argument("measure_and_condition: nothing left to condition on");
    Operator cond = partial_trace(Operator(state.op.dims, std::move(post)), keep);
    cond.entries /= result.probability;
    result.conditional = DensityState{std::move(cond), std::move(labels)};
    return result;
}

MeasureResult measure_and_condition(const DensityState& state, const Operator& effect,
                                    const std::vector<std::string>& on) {
    std::vector<int> positions;
    for (int k = 0; k < state.op.num_subsystems(); ++k)
        if (std::find(on.begin(), on.end(), state.parties[k]) != on.end())
            positions.push_back(k);
    if (positions.empty())
        throw std::invalid_argument("measure_and_condition: no subsystem owned by the given parties");
    return measure_and_condition_subsystems(state, effect, positions);
}

Povm observable_povm(const Operator& observable) {
    const int d = observable.dim();
    Mat half = 0.5 * Mat::Identity(d, d);
    Operator plus(observable.dims, Mat(half + 0.5 * observable.entries));
    Operator minus(observable.dims, Mat(half - 0.5 * observable.entries));
    return make_povm({std::move(plus), std::move(minus)});
}

}  // namespace bellnet
