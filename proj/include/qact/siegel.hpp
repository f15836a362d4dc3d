#pragma once

// Integer symplectic matrices acting on the Siegel upper half-space H_g,
// R . Z = (AZ + B)(CZ + D)^-1, with exact checks of fixed families and a
// Newton-based estimate of the dimension of a fixed locus.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qact/cyclo.hpp"
#include "qact/dense_matrix.hpp"
#include "qact/groups.hpp"
#include "qact/poly.hpp"

namespace qact {

using IntMatrix = Matrix<long>;
using ComplexMatrix = Eigen::MatrixXcd;

struct NamedMatrix {
    std::string name;
    IntMatrix matrix;
};

/// J = [[0, I_g], [-I_g, 0]]
IntMatrix symplectic_form(int g);
/// R^T J R = J. Throws Error(InvalidParameter) unless R is square of even size.
bool is_symplectic(const IntMatrix& r);
/// Inverse of a symplectic matrix, -J R^T J.
IntMatrix symplectic_inverse(const IntMatrix& r);

/// Im(Z) positive definite (Cholesky, smallest pivot > tol) and Z symmetric to within tol.
bool in_siegel_space(const ComplexMatrix& z, double tol = 1e-10);

/// Throws Error(Arithmetic) when CZ + D is numerically singular.
ComplexMatrix act(const IntMatrix& r, const ComplexMatrix& z);
/// Exact action on a constant matrix; throws Error(Arithmetic) when CZ + D is singular.
Matrix<Cyclotomic> act(const IntMatrix& r, const Matrix<Cyclotomic>& z);

/// AZ + B - Z(CZ + D) for a polynomial Z.
PolyMatrix fixed_residual(const IntMatrix& r, const PolyMatrix& z);

/// A symmetric matrix of polynomials in `params` and in auxiliary constants c_k, each
/// the positive square root of a polynomial in the earlier constants.
struct ParamFamily {
    struct Constant {
        std::string name;
        Poly square;
        std::string square_text;
    };
    std::string label;
    std::vector<std::string> params;
    std::vector<Constant> constants;
    PolyMatrix entries;

    std::vector<std::string> variables() const;  // params then constants
    int g() const { return static_cast<int>(entries.rows()); }
    bool is_symmetric() const;
    /// Reduces modulo c_k^2 = square_k, last constant first.
    Poly reduce(const Poly& p) const;
    std::vector<std::complex<double>> constant_values() const;
    ComplexMatrix evaluate(const std::vector<std::complex<double>>& param_values) const;
};

struct GeneratorResidual {
    std::string generator;
    bool zero = false;
    PolyMatrix residual;  // reduced
};

struct FamilyReport {
    std::string label;
    bool symmetric = false;
    std::vector<GeneratorResidual> residuals;
    bool all_zero() const;
};

/// Exact check of R . Z = Z for every generator, as AZ + B = Z(CZ + D).
FamilyReport verify_fixed_family(const std::vector<NamedMatrix>& generators, const ParamFamily& family);

struct GroupDataReport {
    bool all_symplectic = false;
    int order = 0;
    std::vector<std::pair<std::string, bool>> relations;  // relator word, holds
    std::vector<bool> relations_up_to_sign;                // evaluates to +-I (same action on H_g)
    std::string target;
    int target_order = 0;
    bool isomorphic = false;
    bool relations_hold() const;
    bool relations_hold_up_to_sign() const;
    bool ok() const { return all_symplectic && relations_hold() && isomorphic && order == target_order; }
};

/// The finite matrix group generated by the matrices, as a Cayley table. Generator letters are
/// the matrix names. Throws Error(Resource) past max_order elements.
FiniteGroup matrix_group_closure(const std::vector<NamedMatrix>& generators, int max_order = kMaxGroupOrder);

/// Closure order, relators (words in the generator names) and isomorphism with the named target.
GroupDataReport verify_group_data(const std::vector<NamedMatrix>& generators, const std::string& target,
                                  const std::vector<std::string>& relators, int max_order = kMaxGroupOrder);

/// max over generators of ||R . Z - Z||_inf. Throws Error(InvalidParameter) if Z is not in H_g.
double verify_fixed_point_numeric(const std::vector<NamedMatrix>& generators, const ComplexMatrix& z);

struct LocusOptions {
    int starts = 16;
    unsigned seed = 1;
    std::optional<ComplexMatrix> seed_point;
    double tol = 1e-11;       // residual accepted as converged
    double rank_tol = 1e-7;   // singular values below rank_tol * sigma_max count as null
    int max_iterations = 60;
};

struct LocusReport {
    int dimension = 0;        // complex dimension
    ComplexMatrix point;
    double residual = 0;
    std::vector<double> singular_values;  // of the real Jacobian, decreasing
    int starts_tried = 0;
    int converged_in_hg = 0;
    bool cross_validated = false;
    double rank_tol = 0;
};

/// Newton iteration on the stacked residuals over symmetric Z, real coordinates. Throws
/// Error(NotFound) when no start converges to a point of H_g.
LocusReport fixed_locus_dimension(const std::vector<NamedMatrix>& generators, const LocusOptions& opt = {});

// ---- fixtures ----------------------------------------------------------------

struct SiegelFixture {
    std::string name;
    std::string path;
    int g = 0;
    std::vector<NamedMatrix> generators;
    std::string target;
    int target_order = 0;
    std::vector<std::string> relators;
    std::vector<ParamFamily> families;
    std::optional<int> expected_dimension;
    std::string sha256;
    bool checksum_listed = false;  // a SHA256SUMS entry exists and matched
};

std::string sha256_file(const std::string& path);
/// Directory holding the bundled fixtures ($QACT_FIXTURES overrides the build-time default).
std::string default_fixture_dir();
/// Loads a fixture; a bare file name is looked up in default_fixture_dir(). If SHA256SUMS sits
/// next to the file and lists it, a mismatch throws Error(InvalidParameter).
SiegelFixture load_fixture(const std::string& path_or_name);

}  // namespace qact
