#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace bellnet {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

/// Dense complex square matrix tagged with the dimensions of the tensor
/// factors it acts on. Flat indices are lexicographic over the subsystem
/// multi-index, first subsystem most significant.
struct Operator {
    std::vector<int> dims;
    Mat entries;

    Operator() = default;
    Operator(std::vector<int> subsystem_dims, Mat m);

    int dim() const { return static_cast<int>(entries.rows()); }
    int num_subsystems() const { return static_cast<int>(dims.size()); }
};

/// Eigendecomposition of a Hermitian operator, eigenvalues sorted descending.
struct Spectrum {
    RealVec eigenvalues;
    Mat eigenvectors;  // column k belongs to eigenvalues[k]
};

/// A positive unit-trace operator together with one party label per subsystem.
/// A party may own several subsystems.
struct DensityState {
    Operator op;
    std::vector<std::string> parties;
};

int product_dim(const std::vector<int>& dims);
int flat_index(const std::vector<int>& dims, const std::vector<int>& multi);
std::vector<int> unflatten(const std::vector<int>& dims, int flat);

Operator identity_op(const std::vector<int>& dims);
Operator projector(const std::vector<int>& dims, const Vec& ket);

Operator kron(const Operator& a, const Operator& b);

/// Trace out every subsystem not listed in `keep`. The kept subsystems stay
/// in their original relative order.
Operator partial_trace(const Operator& s, const std::vector<int>& keep);

/// Reorder subsystems; perm[k] is the old position of the new subsystem k.
Operator permute_subsystems(const Operator& s, const std::vector<int>& perm);

/// Place `small` on the listed subsystem positions (strictly ascending) of a
/// larger space, identity elsewhere.
Operator embed(const Operator& small, const std::vector<int>& positions,
               const std::vector<int>& full_dims);

/// Rejects input that is not Hermitian within 1e-10.
Spectrum hermitian_eig(const Operator& a);

double trace_real(const Operator& a);
double hermiticity_error(const Operator& a);

/// tr(a*b) computed without forming the product.
std::complex<double> trace_product(const Mat& a, const Mat& b);

Operator hermitian_sqrt(const Operator& a);

/// Von Neumann entropy in bits. Eigenvalues in [-1e-8, 0] are clamped to
/// zero; anything below -1e-8 is rejected. 0*log(0) := 0.
double entropy(const DensityState& s);

/// <ket| s |ket> for a normalized ket of matching dimension.
double fidelity_pure(const DensityState& s, const Vec& ket);

DensityState make_density_state(Operator op, std::vector<std::string> parties);

/// Default party labels A, B, C, ... then P26, P27, ...
std::vector<std::string> default_party_labels(int n);

}  // namespace bellnet
