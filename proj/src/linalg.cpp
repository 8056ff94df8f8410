#include "bellnet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellnet {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdTol = 1e-8;
constexpr double kTraceTol = 1e-8;
constexpr double kZeroEigenvalue = 1e-15;

}  // namespace

Operator::Operator(std::vector<int> subsystem_dims, Mat m)
    : dims(std::move(subsystem_dims)), entries(std::move(m)) {
    if (entries.rows() != entries.cols())
        throw std::invalid_argument("Operator: matrix must be square");
    if (product_dim(dims) != entries.rows())
        throw std::invalid_argument("Operator: dims do not match matrix size");
}

int product_dim(const std::vector<int>& dims) {
    int d = 1;
    for (int k : dims) {
        if (k < 1) throw std::invalid_argument("subsystem dimension must be positive");
        d *= k;
    }
    return d;
}

int flat_index(const std::vector<int>& dims, const std::vector<int>& multi) {
    if (multi.size() != dims.size())
        throw std::invalid_argument("flat_index: rank mismatch");
    int flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (multi[k] < 0 || multi[k] >= dims[k])
            throw std::out_of_range("flat_index: component out of range");
        flat = flat * dims[k] + multi[k];
    }
    return flat;
}

std::vector<int> unflatten(const std::vector<int>& dims, int flat) {
    std::vector<int> multi(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        multi[k] = flat % dims[k];
        flat /= dims[k];
    }
    return multi;
}

Operator identity_op(const std::vector<int>& dims) {
    int d = product_dim(dims);
    return Operator(dims, Mat::Identity(d, d));
}

Operator projector(const std::vector<int>& dims, const Vec& ket) {
    if (ket.size() != product_dim(dims))
        throw std::invalid_argument("projector: ket size does not match dims");
    return Operator(dims, ket * ket.adjoint());
}

Operator kron(const Operator& a, const Operator& b) {
    const int da = a.dim(), db = b.dim();
    Mat out(da * db, da * db);
    for (int ia = 0; ia < da; ++ia)
        for (int ja = 0; ja < da; ++ja)
            out.block(ia * db, ja * db, db, db) = a.entries(ia, ja) * b.entries;
    std::vector<int> dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    return Operator(std::move(dims), std::move(out));
}

Operator partial_trace(const Operator& s, const std::vector<int>& keep_in) {
    std::vector<int> keep = keep_in;
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    const int n = s.num_subsystems();
    for (int k : keep)
        if (k < 0 || k >= n) throw std::out_of_range("partial_trace: index out of range");

    std::vector<int> traced;
    for (int k = 0; k < n; ++k)
        if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);

    std::vector<int> keep_dims, traced_dims;
    for (int k : keep) keep_dims.push_back(s.dims[k]);
    for (int k : traced) traced_dims.push_back(s.dims[k]);
    const int dk = product_dim(keep_dims);
    const int dt = product_dim(traced_dims);

    Mat out = Mat::Zero(dk, dk);
    std::vector<int> full_i(n), full_j(n);
    for (int i = 0; i < dk; ++i) {
        const std::vector<int> mi = unflatten(keep_dims, i);
        for (int j = 0; j < dk; ++j) {
            const std::vector<int> mj = unflatten(keep_dims, j);
            std::complex<double> acc = 0;
            for (int t = 0; t < dt; ++t) {
                const std::vector<int> mt = unflatten(traced_dims, t);
                for (std::size_t k = 0; k < keep.size(); ++k) {
                    full_i[keep[k]] = mi[k];
                    full_j[keep[k]] = mj[k];
                }
                for (std::size_t k = 0; k < traced.size(); ++k) {
                    full_i[traced[k]] = mt[k];
                    full_j[traced[k]] = mt[k];
                }
                acc += s.entries(flat_index(s.dims, full_i), flat_index(s.dims, full_j));
            }
            out(i, j) = acc;
        }
    }
    return Operator(std::move(keep_dims), std::move(out));
}

Operator permute_subsystems(const Operator& s, const std::vector<int>& perm) {
    const int n = s.num_subsystems();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permute_subsystems: permutation rank mismatch");
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p])
            throw std::invalid_argument("permute_subsystems: not a permutation");
        seen[p] = true;
    }
    std::vector<int> new_dims(n);
    for (int k = 0; k < n; ++k) new_dims[k] = s.dims[perm[k]];
    const int d = s.dim();

    // row map: flat index in the new ordering -> flat index in the old one
    std::vector<int> map(d);
    for (int i = 0; i < d; ++i) {
        const std::vector<int> mi = unflatten(new_dims, i);
        std::vector<int> old_multi(n);
        for (int k = 0; k < n; ++k) old_multi[perm[k]] = mi[k];
        map[i] = flat_index(s.dims, old_multi);
    }
    Mat out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out(i, j) = s.entries(map[i], map[j]);
    return Operator(std::move(new_dims), std::move(out));
}

Operator embed(const Operator& small, const std::vector<int>& positions,
               const std::vector<int>& full_dims) {
    const int n = static_cast<int>(full_dims.size());
    if (positions.size() != small.dims.size())
        throw std::invalid_argument("embed: positions do not match operator rank");
    for (std::size_t k = 0; k + 1 < positions.size(); ++k)
        if (positions[k] >= positions[k + 1])
            throw std::invalid_argument("embed: positions must be strictly ascending");
    std::vector<int> target_dims;
    for (int p : positions) {
        if (p < 0 || p >= n) throw std::out_of_range("embed: position out of range");
        target_dims.push_back(full_dims[p]);
    }
    if (product_dim(target_dims) != small.dim())
        throw std::invalid_argument("embed: operator does not fit the target subsystems");

    std::vector<int> rest;
    for (int k = 0; k < n; ++k)
        if (std::find(positions.begin(), positions.end(), k) == positions.end())
            rest.push_back(k);
    std::vector<int> rest_dims;
    for (int k : rest) rest_dims.push_back(full_dims[k]);

    const int dS = small.dim();
    const int dR = product_dim(rest_dims);
    const int d = product_dim(full_dims);
    Mat out = Mat::Zero(d, d);
    std::vector<int> full_i(n), full_j(n);
    for (int is = 0; is < dS; ++is) {
        const std::vector<int> msi = unflatten(target_dims, is);
        for (int js = 0; js < dS; ++js) {
            const std::complex<double> v = small.entries(is, js);
            if (v == std::complex<double>(0.0, 0.0)) continue;
            const std::vector<int> msj = unflatten(target_dims, js);
            for (int r = 0; r < dR; ++r) {
                const std::vector<int> mr = unflatten(rest_dims, r);
                for (std::size_t k = 0; k < positions.size(); ++k) {
                    full_i[positions[k]] = msi[k];
                    full_j[positions[k]] = msj[k];
                }
                for (std::size_t k = 0; k < rest.size(); ++k) {
                    full_i[rest[k]] = mr[k];
                    full_j[rest[k]] = mr[k];
                }
                out(flat_index(full_dims, full_i), flat_index(full_dims, full_j)) = v;
            }
        }
    }
    return Operator(full_dims, std::move(out));
}

double hermiticity_error(const Operator& a) {
    return (a.entries - a.entries.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum hermitian_eig(const Operator& a) {
    if (hermiticity_error(a) > kHermitianTol)
        throw std::invalid_argument("hermitian_eig: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> solver(a.entries);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigensolver failed");
    const int d = a.dim();
    Spectrum spec;
    spec.eigenvalues = RealVec(d);
    spec.eigenvectors = Mat(d, d);
    for (int k = 0; k < d; ++k) {  // Eigen sorts ascending, we want descending
        spec.eigenvalues[k] = solver.eigenvalues()[d - 1 - k];
        spec.eigenvectors.col(k) = solver.eigenvectors().col(d - 1 - k);
    }
    return spec;
}

double trace_real(const Operator& a) { return a.entries.trace().real(); }

std::complex<double> trace_product(const Mat& a, const Mat& b) {
    return a.cwiseProduct(b.transpose()).sum();
}

Operator hermitian_sqrt(const Operator& a) {
    Spectrum spec = hermitian_eig(a);
    RealVec lam = spec.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    Mat m = spec.eigenvectors * lam.asDiagonal() * spec.eigenvectors.adjoint();
    return Operator(a.dims, std::move(m));
}

double entropy(const DensityState& s) {
    if (std::abs(trace_real(s.op) - 1.0) > kTraceTol)
        throw std::invalid_argument("entropy: state does not have unit trace");
    Spectrum spec = hermitian_eig(s.op);
    double h = 0.0;
    for (int k = 0; k < spec.eigenvalues.size(); ++k) {
        double lam = spec.eigenvalues[k];
        if (lam < -kPsdTol)
            throw std::invalid_argument("entropy: state has a negative eigenvalue");
        if (lam < kZeroEigenvalue) continue;
        h -= lam * std::log2(lam);
    }
    return h;
}

double fidelity_pure(const DensityState& s, const Vec& ket) {
    if (ket.size() != s.op.dim())
        throw std::invalid_argument("fidelity_pure: dimension mismatch");
    if (std::abs(ket.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("fidelity_pure: ket is not normalized");
    return (ket.adjoint() * s.op.entries * ket)(0, 0).real();
}

DensityState make_density_state(Operator op, std::vector<std::string> parties) {
    if (parties.size() != op.dims.size())
        throw std::invalid_argument("make_density_state: one party label per subsystem required");
    if (hermiticity_error(op) > kHermitianTol)
        throw std::invalid_argument("make_density_state: operator is not Hermitian");
    if (std::abs(trace_real(op) - 1.0) > kTraceTol)
        throw std::invalid_argument("make_density_state: trace is not one");
    Eigen::SelfAdjointEigenSolver<Mat> solver(op.entries);
    if (solver.eigenvalues().minCoeff() < -kPsdTol)
        throw std::invalid_argument("make_density_state: operator is not positive semidefinite");
    return DensityState{std::move(op), std::move(parties)};
}

std::vector<std::string> default_party_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int k = 0; k < n; ++k) {
        if (k < 26)
            labels.emplace_back(1, static_cast<char>('A' + k));
        else
            labels.push_back("P" + std::to_string(k));
    }
    return labels;
}

}  // namespace bellnet
