#include "qact/siegel.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "qact/error.hpp"
#include "qact/words.hpp"

#ifndef QACT_FIXTURE_DIR
#define QACT_FIXTURE_DIR "fixtures"
#endif

namespace qact {

namespace {

int half_size(const IntMatrix& r) {
    if (r.rows() != r.cols() || r.rows() % 2 != 0 || r.rows() == 0)
        fail(ErrorKind::InvalidParameter, "symplectic matrices are square of even size, got " + std::to_string(r.rows()) +
                                              "x" + std::to_string(r.cols()));
    return static_cast<int>(r.rows() / 2);
}

template <class T>
Matrix<T> block(const IntMatrix& r, int g, int bi, int bj) {
    Matrix<T> m(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) m(i, j) = T(r(bi * g + i, bj * g + j));
    return m;
}

ComplexMatrix complex_block(const IntMatrix& r, int g, int bi, int bj) {
    ComplexMatrix m(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) m(i, j) = static_cast<double>(r(bi * g + i, bj * g + j));
    return m;
}

int check_generators(const std::vector<NamedMatrix>& gens) {
    if (gens.empty()) fail(ErrorKind::InvalidParameter, "no generators");
    const int g = half_size(gens.front().matrix);
    for (const auto& m : gens)
        if (half_size(m.matrix) != g) fail(ErrorKind::InvalidParameter, "generators of different sizes");
    return g;
}

}  // namespace

IntMatrix symplectic_form(int g) {
    IntMatrix j(2 * g, 2 * g);
    for (int i = 0; i < g; ++i) {
        j(i, g + i) = 1;
        j(g + i, i) = -1;
    }
    return j;
}

bool is_symplectic(const IntMatrix& r) {
    const int g = half_size(r);
    const auto j = symplectic_form(g);
    return r.transpose() * j * r == j;
}

IntMatrix symplectic_inverse(const IntMatrix& r) {
    const auto j = symplectic_form(half_size(r));
    IntMatrix m = j * r.transpose() * j;
    return -1L * m;
}

bool in_siegel_space(const ComplexMatrix& z, double tol) {
    if (z.rows() != z.cols() || z.rows() == 0) return false;
    if ((z - z.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, z.cwiseAbs().maxCoeff())) return false;
    Eigen::MatrixXd y = z.imag();
    y = (y + y.transpose()) / 2;
    Eigen::LLT<Eigen::MatrixXd> llt(y);
    if (llt.info() != Eigen::Success) return false;
    return llt.matrixL().toDenseMatrix().diagonal().minCoeff() > tol;
}

ComplexMatrix act(const IntMatrix& r, const ComplexMatrix& z) {
    const int g = half_size(r);
    if (z.rows() != g || z.cols() != g) fail(ErrorKind::InvalidParameter, "Z has the wrong size");
    ComplexMatrix num = complex_block(r, g, 0, 0) * z + complex_block(r, g, 0, 1);
    ComplexMatrix den = complex_block(r, g, 1, 0) * z + complex_block(r, g, 1, 1);
    Eigen::JacobiSVD<ComplexMatrix> svd(den);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= 1e-12 * std::max(1.0, s(0))) fail(ErrorKind::Arithmetic, "CZ + D is singular");
    ComplexMatrix out = num * den.inverse();
    return (out + out.transpose()) / 2.0;
}

Matrix<Cyclotomic> act(const IntMatrix& r, const Matrix<Cyclotomic>& z) {
    const int g = half_size(r);
    if (static_cast<int>(z.rows()) != g || static_cast<int>(z.cols()) != g)
        fail(ErrorKind::InvalidParameter, "Z has the wrong size");
    auto num = block<Cyclotomic>(r, g, 0, 0) * z + block<Cyclotomic>(r, g, 0, 1);
    auto den = block<Cyclotomic>(r, g, 1, 0) * z + block<Cyclotomic>(r, g, 1, 1);
    return num * inverse(den);
}

PolyMatrix fixed_residual(const IntMatrix& r, const PolyMatrix& z) {
    const int g = half_size(r);
    if (static_cast<int>(z.rows()) != g || static_cast<int>(z.cols()) != g)
        fail(ErrorKind::InvalidParameter, "Z has the wrong size");
    auto lhs = block<Poly>(r, g, 0, 0) * z + block<Poly>(r, g, 0, 1);
    auto rhs = z * (block<Poly>(r, g, 1, 0) * z + block<Poly>(r, g, 1, 1));
    return lhs - rhs;
}

// ---- parametric families -----------------------------------------------------

std::vector<std::string> ParamFamily::variables() const {
    auto v = params;
    for (const auto& c : constants) v.push_back(c.name);
    return v;
}

bool ParamFamily::is_symmetric() const { return entries == entries.transpose(); }

Poly ParamFamily::reduce(const Poly& p) const {
    Poly cur = p;
    for (int k = static_cast<int>(constants.size()) - 1; k >= 0; --k) {
        const int var = static_cast<int>(params.size()) + k;
        Poly next;
        for (const auto& [mono, coef] : cur.terms()) {
            const int e = var < static_cast<int>(mono.size()) ? mono[var] : 0;
            if (e < 2) {
                next += Poly::term(mono, coef);
                continue;
            }
            auto m = mono;
            m[var] = e % 2;
            next += Poly::term(m, coef) * constants[k].square.pow(e / 2);
        }
        cur = next;
    }
    return cur;
}

std::vector<std::complex<double>> ParamFamily::constant_values() const {
    std::vector<std::complex<double>> point(params.size(), 0.0);
    std::vector<std::complex<double>> out;
    for (const auto& c : constants) {
        auto v = std::sqrt(c.square.evaluate(point));
        point.push_back(v);
        out.push_back(v);
    }
    return out;
}

ComplexMatrix ParamFamily::evaluate(const std::vector<std::complex<double>>& param_values) const {
    if (param_values.size() != params.size()) fail(ErrorKind::InvalidParameter, "wrong number of parameter values");
    auto point = param_values;
    for (auto v : constant_values()) point.push_back(v);
    const int n = g();
    ComplexMatrix z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = entries(i, j).evaluate(point);
    return z;
}

bool FamilyReport::all_zero() const {
    for (const auto& r : residuals)
        if (!r.zero) return false;
    return symmetric;
}

FamilyReport verify_fixed_family(const std::vector<NamedMatrix>& generators, const ParamFamily& family) {
    const int g = check_generators(generators);
    if (family.g() != g) fail(ErrorKind::InvalidParameter, "family and generators have different genus");
    FamilyReport rep;
    rep.label = family.label;
    rep.symmetric = family.is_symmetric();
    for (const auto& gen : generators) {
        auto res = fixed_residual(gen.matrix, family.entries);
        for (std::size_t i = 0; i < res.rows(); ++i)
            for (std::size_t j = 0; j < res.cols(); ++j) res(i, j) = family.reduce(res(i, j));
        rep.residuals.push_back({gen.name, res.is_zero(), res});
    }
    return rep;
}

// ---- group data ----------------------------------------------------------------

bool GroupDataReport::relations_hold() const {
    for (const auto& [_, ok] : relations)
        if (!ok) return false;
    return true;
}

bool GroupDataReport::relations_hold_up_to_sign() const {
    for (bool ok : relations_up_to_sign)
        if (!ok) return false;
    return true;
}

FiniteGroup matrix_group_closure(const std::vector<NamedMatrix>& generators, int max_order) {
    const int g = check_generators(generators);
    using Key = std::vector<long>;
    auto key = [](const IntMatrix& m) {
        Key k;
        k.reserve(m.rows() * m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
        return k;
    };
    std::vector<IntMatrix> elems{IntMatrix::identity(2 * g)};
    std::vector<std::string> names{"1"};
    std::map<Key, int> index{{key(elems[0]), 0}};
    // breadth-first, so each name is a shortest word
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& gen : generators) {
            IntMatrix p = elems[head] * gen.matrix;
            auto k = key(p);
            if (index.count(k)) continue;
            if (static_cast<int>(elems.size()) >= max_order)
                fail(ErrorKind::Resource, "matrix group closure exceeds " + std::to_string(max_order) + " elements");
            index.emplace(std::move(k), static_cast<int>(elems.size()));
            names.push_back(head == 0 ? gen.name : names[head] + "*" + gen.name);
            elems.push_back(std::move(p));
        }
    }
    const std::size_t n = elems.size();
    std::vector<std::uint16_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<std::uint16_t>(index.at(key(elems[a] * elems[b])));
    std::vector<Element> gens;
    std::vector<std::string> letters;
    for (const auto& gen : generators) {
        gens.push_back(Element{static_cast<std::uint16_t>(index.at(key(gen.matrix)))});
        letters.push_back(gen.name);
    }
    return FiniteGroup::from_table("matrix group", std::move(table), std::move(names), std::move(gens), std::move(letters));
}

GroupDataReport verify_group_data(const std::vector<NamedMatrix>& generators, const std::string& target,
                                  const std::vector<std::string>& relators, int max_order) {
    const int g = check_generators(generators);
    GroupDataReport rep;
    rep.all_symplectic = true;
    for (const auto& m : generators)
        if (!is_symplectic(m.matrix)) rep.all_symplectic = false;

    struct Ops {
        const std::vector<NamedMatrix>* gens;
        int g;
        IntMatrix identity() const { return IntMatrix::identity(2 * g); }
        IntMatrix mul(const IntMatrix& a, const IntMatrix& b) const { return a * b; }
        IntMatrix inv(const IntMatrix& a) const { return symplectic_inverse(a); }
        IntMatrix lookup(const std::string& s) const {
            for (const auto& m : *gens)
                if (m.name == s) return m.matrix;
            fail(ErrorKind::InvalidParameter, "unknown generator " + s);
        }
    } ops{&generators, g};
    const IntMatrix id = ops.identity();
    const IntMatrix minus_id = -1L * id;
    for (const auto& w : relators) {
        const IntMatrix v = evaluate_word(parse_word(w), ops);
        rep.relations.emplace_back(w, v == id);
        rep.relations_up_to_sign.push_back(v == id || v == minus_id);
    }

    auto closure = matrix_group_closure(generators, max_order);
    rep.order = closure.order();
    rep.target = target;
    if (!target.empty()) {
        auto t = build_named(target);
        rep.target_order = t.order();
        rep.isomorphic = isomorphic(closure, t);
    }
    return rep;
}

// ---- numerics --------------------------------------------------------------------

double verify_fixed_point_numeric(const std::vector<NamedMatrix>& generators, const ComplexMatrix& z) {
    check_generators(generators);
    if (!in_siegel_space(z)) fail(ErrorKind::InvalidParameter, "Z is not in the Siegel upper half-space");
    double worst = 0;
    for (const auto& gen : generators) {
        ComplexMatrix d = act(gen.matrix, z) - z;
        worst = std::max(worst, d.cwiseAbs().rowwise().sum().maxCoeff());
    }
    return worst;
}

namespace {

struct Blocks {
    ComplexMatrix a, b, c, d;
};

class FixedPointSystem {
public:
    explicit FixedPointSystem(const std::vector<NamedMatrix>& gens) : g_(check_generators(gens)) {
        for (const auto& m : gens)
            blocks_.push_back({complex_block(m.matrix, g_, 0, 0), complex_block(m.matrix, g_, 0, 1),
                               complex_block(m.matrix, g_, 1, 0), complex_block(m.matrix, g_, 1, 1)});
        for (int i = 0; i < g_; ++i)
            for (int j = i; j < g_; ++j) coords_.emplace_back(i, j);
    }

    int unknowns() const { return static_cast<int>(coords_.size()); }

    ComplexMatrix to_matrix(const Eigen::VectorXd& x) const {
        const int n = unknowns();
        ComplexMatrix z(g_, g_);
        for (int k = 0; k < n; ++k) {
            auto [i, j] = coords_[k];
            z(i, j) = z(j, i) = std::complex<double>(x(k), x(n + k));
        }
        return z;
    }

    Eigen::VectorXd to_vector(const ComplexMatrix& z) const {
        const int n = unknowns();
        Eigen::VectorXd x(2 * n);
        for (int k = 0; k < n; ++k) {
            auto [i, j] = coords_[k];
            x(k) = z(i, j).real();
            x(n + k) = z(i, j).imag();
        }
        return x;
    }

    Eigen::VectorXd residual(const ComplexMatrix& z) const {
        const int m = static_cast<int>(blocks_.size()) * g_ * g_;
        Eigen::VectorXcd f(m);
        int row = 0;
        for (const auto& bl : blocks_) {
            ComplexMatrix r = bl.a * z + bl.b - z * (bl.c * z + bl.d);
            for (int i = 0; i < g_; ++i)
                for (int j = 0; j < g_; ++j) f(row++) = r(i, j);
        }
        Eigen::VectorXd out(2 * m);
        out << f.real(), f.imag();
        return out;
    }

    /// F is holomorphic, so the real Jacobian is [[Re J, -Im J], [Im J, Re J]].
    Eigen::MatrixXd jacobian(const ComplexMatrix& z) const {
        const int m = static_cast<int>(blocks_.size()) * g_ * g_;
        const int n = unknowns();
        ComplexMatrix jc(m, n);
        for (int k = 0; k < n; ++k) {
            auto [p, q] = coords_[k];
            ComplexMatrix e = ComplexMatrix::Zero(g_, g_);
            e(p, q) = e(q, p) = 1.0;
            int row = 0;
            for (const auto& bl : blocks_) {
                ComplexMatrix d = bl.a * e - e * (bl.c * z + bl.d) - z * bl.c * e;
                for (int i = 0; i < g_; ++i)
                    for (int j = 0; j < g_; ++j) jc(row++, k) = d(i, j);
            }
        }
        Eigen::MatrixXd jr(2 * m, 2 * n);
        jr << jc.real(), -jc.imag(), jc.imag(), jc.real();
        return jr;
    }

    struct Outcome {
        bool converged = false;
        ComplexMatrix z;
        double residual = 0;
    };

    Outcome newton(ComplexMatrix z, double tol, int max_iter) const {
        Eigen::VectorXd x = to_vector(z);
        for (int it = 0; it <= max_iter; ++it) {
            z = to_matrix(x);
            Eigen::VectorXd f = residual(z);
            const double r = f.cwiseAbs().maxCoeff();
            if (!std::isfinite(r) || r > 1e12) return {false, z, r};
            if (r < tol) return {true, z, r};
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jacobian(z));
            x -= cod.solve(f);
        }
        z = to_matrix(x);
        return {false, z, residual(z).cwiseAbs().maxCoeff()};
    }

    int g() const { return g_; }

private:
    int g_;
    std::vector<Blocks> blocks_;
    std::vector<std::pair<int, int>> coords_;
};

ComplexMatrix random_start(int g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        ComplexMatrix z(g, g);
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                std::complex<double> v(u(rng), 0.4 * u(rng) + (i == j ? 1.0 : 0.0));
                z(i, j) = z(j, i) = v;
            }
        if (in_siegel_space(z)) return z;
    }
}

int null_count(const Eigen::VectorXd& s, double rank_tol) {
    int k = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) < rank_tol * s(0)) ++k;
    return k;
}

}  // namespace

LocusReport fixed_locus_dimension(const std::vector<NamedMatrix>& generators, const LocusOptions& opt) {
    FixedPointSystem sys(generators);
    LocusReport rep;
    rep.rank_tol = opt.rank_tol;
    std::optional<FixedPointSystem::Outcome> found;
    std::mt19937_64 rng(opt.seed);
    const int total = opt.starts + (opt.seed_point ? 1 : 0);
    for (int s = 0; s < total; ++s) {
        ComplexMatrix start = (opt.seed_point && s == 0) ? *opt.seed_point : random_start(sys.g(), rng);
        ++rep.starts_tried;
        auto out = sys.newton(start, opt.tol, opt.max_iterations);
        if (!out.converged || !in_siegel_space(out.z)) continue;
        ++rep.converged_in_hg;
        if (!found) found = out;
    }
    if (!found) fail(ErrorKind::NotFound, "Newton iteration found no fixed point in H_g");

    rep.point = found->z;
    rep.residual = found->residual;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.jacobian(rep.point), Eigen::ComputeFullV);
    const Eigen::VectorXd s = svd.singularValues();
    rep.singular_values.assign(s.data(), s.data() + s.size());
    const int real_null = null_count(s, opt.rank_tol);
    rep.dimension = real_null / 2;

    // step off the point and come back: along a null direction we should stay away,
    // transversally (or at an isolated point) Newton should return
    const Eigen::VectorXd x0 = sys.to_vector(rep.point);
    const double h = 1e-3;
    if (real_null > 0) {
        bool ok = real_null % 2 == 0;
        for (int k = 0; k < real_null && ok; ++k) {
            Eigen::VectorXd dir = svd.matrixV().col(s.size() - 1 - k);
            auto out = sys.newton(sys.to_matrix(x0 + h * dir), opt.tol, opt.max_iterations);
            const double dist = (sys.to_vector(out.z) - x0).norm();
            if (!out.converged || !in_siegel_space(out.z) || dist < 0.5 * h) ok = false;
        }
        rep.cross_validated = ok;
    } else {
        std::normal_distribution<double> nd;
        Eigen::VectorXd dir(x0.size());
        for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = nd(rng);
        auto out = sys.newton(sys.to_matrix(x0 + h * dir.normalized()), opt.tol, opt.max_iterations);
        rep.cross_validated = out.converged && (sys.to_vector(out.z) - x0).norm() < 1e-8;
    }
    return rep;
}

// ---- fixtures --------------------------------------------------------------------

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::NotFound, "cannot read " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        fail(ErrorKind::Internal, "sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string default_fixture_dir() {
    if (const char* env = std::getenv("QACT_FIXTURES")) return env;
    return QACT_FIXTURE_DIR;
}

SiegelFixture load_fixture(const std::string& path_or_name) {
    namespace fs = std::filesystem;
    fs::path p(path_or_name);
    if (!fs::exists(p) && !p.has_parent_path()) {
        p = fs::path(default_fixture_dir()) / p;
        if (!fs::exists(p) && p.extension() != ".json") p += ".json";
    }
    if (!fs::exists(p)) fail(ErrorKind::NotFound, "no fixture " + path_or_name);

    SiegelFixture fx;
    fx.path = p.string();
    fx.sha256 = sha256_file(fx.path);
    const auto sums = p.parent_path() / "SHA256SUMS";
    if (fs::exists(sums)) {
        std::ifstream in(sums);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string digest, file;
            ls >> digest >> file;
            if (file != p.filename().string()) continue;
            if (digest != fx.sha256) fail(ErrorKind::InvalidParameter, "checksum mismatch for " + fx.path);
            fx.checksum_listed = true;
        }
    }

    nlohmann::json j;
    try {
        std::ifstream in(fx.path);
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidParameter, fx.path + ": " + e.what());
    }
    try {
        fx.name = j.at("name").get<std::string>();
        fx.g = j.at("g").get<int>();
        for (const auto& gj : j.at("generators")) {
            const auto rows = gj.at("matrix").get<std::vector<std::vector<long>>>();
            IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r].size() != m.cols()) fail(ErrorKind::InvalidParameter, "ragged generator matrix");
                for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
            }
            if (static_cast<int>(m.rows()) != 2 * fx.g) fail(ErrorKind::InvalidParameter, "generator size is not 2g");
            fx.generators.push_back({gj.at("name").get<std::string>(), m});
        }
        if (j.contains("group")) {
            const auto& gr = j["group"];
            fx.target = gr.value("target", "");
            fx.target_order = gr.value("order", 0);
            fx.relators = gr.value("relators", std::vector<std::string>{});
        }
        for (const auto& fj : j.value("families", nlohmann::json::array())) {
            ParamFamily f;
            f.label = fj.at("label").get<std::string>();
            f.params = fj.value("params", std::vector<std::string>{});
            for (const auto& cj : fj.value("constants", nlohmann::json::array())) {
                ParamFamily::Constant c;
                c.name = cj.at("name").get<std::string>();
                c.square_text = cj.at("square").get<std::string>();
                c.square = parse_poly(c.square_text, f.variables());
                f.constants.push_back(std::move(c));
            }
            const auto rows = fj.at("entries").get<std::vector<std::vector<std::string>>>();
            if (static_cast<int>(rows.size()) != fx.g) fail(ErrorKind::InvalidParameter, "family size is not g");
            f.entries = PolyMatrix(fx.g, fx.g);
            const auto vars = f.variables();
            for (int r = 0; r < fx.g; ++r) {
                if (static_cast<int>(rows[r].size()) != fx.g) fail(ErrorKind::InvalidParameter, "ragged family matrix");
                for (int c = 0; c < fx.g; ++c) f.entries(r, c) = parse_poly(rows[r][c], vars);
            }
            fx.families.push_back(std::move(f));
        }
        if (j.contains("expected_dimension")) fx.expected_dimension = j["expected_dimension"].get<int>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidParameter, fx.path + ": " + e.what());
    }
    return fx;
}

}  // namespace qact
