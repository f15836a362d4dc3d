// qact: command-line front end.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qact/error.hpp"
#include "qact/report.hpp"
#include "qact/siegel.hpp"

using namespace qact;
using report::Outcome;
using json = report::Json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchema = 1;

struct Output {
    bool as_json = false, as_csv = false, as_markdown = false;
    int jobs = 1;
    std::string out;
    bool timing = false;
};


json input_value(const CLI::Option* opt) {
    if (opt->get_type_size() == 0) return true;
    const std::string v = opt->results().front();
    auto parsed = nlohmann::ordered_json::parse(v, nullptr, false);
    if (!parsed.is_discarded() && parsed.is_number()) return parsed;
    return v;
}

// ---- rendering ----------------------------------------------------------------------

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool is_table(const json& v) {
    if (!v.is_array() || v.empty()) return false;
    for (const auto& r : v)
        if (!r.is_object()) return false;
    return true;
}

std::vector<std::string> columns(const json& rows) {
    std::vector<std::string> cols;
    for (const auto& r : rows)
        for (const auto& [k, _] : r.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    return cols;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

struct Flat {
    std::vector<std::pair<std::string, json>> scalars;
    std::vector<std::pair<std::string, json>> tables;
};

/// Objects are walked into; arrays of objects become tables, anything else a key/value line.
void flatten(const json& v, const std::string& path, Flat& f) {
    if (v.is_object() && (path.empty() || !v.empty())) {
        for (const auto& [k, x] : v.items()) flatten(x, path.empty() ? k : path + "." + k, f);
    } else if (is_table(v)) {
        f.tables.emplace_back(path, v);
    } else {
        f.scalars.emplace_back(path, v);
    }
}

void write_rows(std::ostream& os, const json& rows, bool markdown) {
    auto cols = columns(rows);
    auto line = [&](auto value_of) {
        if (markdown) os << "|";
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const std::string v = value_of(i);
            if (markdown) os << " " << v << " |";
            else os << (i ? "," : "") << csv_escape(v);
        }
        os << "\n";
    };
    line([&](std::size_t i) { return cols[i]; });
    if (markdown) line([](std::size_t) { return std::string("---"); });
    for (const auto& r : rows) line([&](std::size_t i) { return r.contains(cols[i]) ? cell(r[cols[i]]) : std::string(); });
}

void render_markdown(std::ostream& os, const json& bundle) {
    os << "# qact " << bundle["command"].get<std::string>() << "\n\n";
    Flat f;
    flatten(bundle["results"], "", f);
    for (const auto& [k, v] : f.scalars) os << "- **" << k << "**: " << cell(v) << "\n";
    for (const auto& [k, v] : f.tables) {
        os << "\n## " << k << "\n\n";
        write_rows(os, v, true);
    }
}

void render_csv(std::ostream& os, const json& bundle) {
    Flat f;
    flatten(bundle["results"], "", f);
    os << "key,value\n";
    for (const auto& [k, v] : f.scalars) os << csv_escape(k) << "," << csv_escape(cell(v)) << "\n";
    for (const auto& [k, v] : f.tables) {
        os << "\n# " << k << "\n";
        write_rows(os, v, false);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quaternion group actions on Riemann surfaces and their Jacobians"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    report::Options o;
    Output w;

    auto common = [&](CLI::App* c) {
        c->add_option("--n", o.n, "Q(2^n) with n >= 3")->check(CLI::Range(3, 7));
        c->add_flag("--json", w.as_json, "JSON output (default)");
        c->add_flag("--csv", w.as_csv, "CSV output");
        c->add_flag("--markdown", w.as_markdown, "Markdown output");
        c->add_option("--seed", o.seed, "random seed");
        c->add_option("--jobs", w.jobs, "worker cap (work runs on one thread)")->check(CLI::PositiveNumber);
        c->add_option("--out", w.out, "write the report here instead of stdout");
        c->add_flag("--timing", w.timing, "include the runtime in the report");
    };

    std::map<std::string, std::function<Outcome()>> run;
    auto sub = [&](const std::string& name, const std::string& help, std::function<Outcome()> f) {
        auto* c = app.add_subcommand(name, help);
        common(c);
        run[name] = std::move(f);
        return c;
    };

    auto* g = sub("groups", "group data, subgroups and checks", [&] { return report::groups(o); });
    g->add_option("--group", o.group, "named group (Q16, G1(4), QD16, ...) instead of Q(2^n)");
    sub("chars", "character table and rational irreducibles", [&] { return report::chars(o); });
    auto* d = sub("decompose", "isogeny factor table for a multiplicity vector", [&] { return report::decompose(o); });
    d->add_option("--a", o.a, "a1,a2,a3,a4");
    d->add_option("--b", o.b, "b_s per s, or one value per Galois orbit")->required();
    auto* c = sub("classify", "topological classes of skes", [&] { return report::classify(o); });
    c->add_option("--signature", o.signature, "g:k1,k2,...")->required();
    c->add_option("--group", o.group, "named group instead of Q(2^n)");
    auto* f = sub("families", "one-dimensional families", [&] { return report::families(o); });
    f->add_flag("!--no-orbits", o.count_orbits, "skip the orbit counts");
    auto* z = sub("genus-zero", "genus-zero actions", [&] { return report::genus_zero(o); });
    z->add_option("--max-b", o.max_b, "largest b");
    z->add_option("--census", o.max_periods, "also check every ske with up to this many periods");
    auto* q = sub("quotient", "quotient genera and branch data", [&] { return report::quotient(o); });
    q->add_option("--ske", o.ske_file, "ske JSON file");
    q->add_option("--family", o.family, "F0, F1, F2 or C");
    q->add_option("--param", o.param, "family parameter (p or k)");
    q->add_option("--subgroup", o.subgroup, "only this subgroup label");
    sub("extend", "extension checks", [&] { return report::extend(o); });

    auto* s = app.add_subcommand("siegel", "symplectic data and fixed loci");
    s->require_subcommand(1);
    auto siegel_sub = [&](const std::string& name, const std::string& help) {
        auto* sc = s->add_subcommand(name, help);
        common(sc);
        sc->add_option("--fixture", o.fixture, "fixture file or bundled name")->required();
        run["siegel " + name] = [&o, name] { return report::siegel(o, name); };
        return sc;
    };
    siegel_sub("verify", "exact fixed-family check");
    siegel_sub("group", "closure, relations, isomorphism type");
    auto* loc = siegel_sub("locus", "numeric fixed-locus dimension");
    loc->add_option("--starts", o.starts, "random Newton starts");
    loc->add_option("--tol", o.tol, "residual tolerance");

    auto* cv = sub("curve", "hyperelliptic model", [&] { return report::curve(o); });
    cv->add_option("--t", o.t, "parameter, e.g. -1, 2, 1/3+i");
    cv->add_flag("--verify", o.verify, "sample the automorphisms");
    cv->add_option("--samples", o.samples, "sample points");
    auto* rp = sub("reproduce", "regenerate every table and compare with the committed copy", [&] { return report::reproduce(o); });
    rp->add_flag("--update", o.update, "rewrite the expected file");
    rp->add_option("--expected-dir", o.expected_dir, "directory of expected files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::string name;
    for (auto* sc : app.get_subcommands()) {
        name = sc->get_name();
        for (auto* inner : sc->get_subcommands()) name += " " + inner->get_name();
    }
    if (!run.count(name)) {
        std::cerr << app.help();
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = run[name]();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::InvalidParameter:
            case ErrorKind::InvalidMultiplicities:
            case ErrorKind::InvalidEmbedding:
            case ErrorKind::NotFound:
                return 2;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    json bundle;
    bundle["schema"] = kSchema;
    bundle["tool"] = std::string("qact ") + kVersion;
    bundle["command"] = name;
    json inputs = json::object();
    for (auto* opt : app.get_subcommand(name.substr(0, name.find(' ')))->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") continue;
        inputs[opt->get_name()] = input_value(opt);
    }
    if (name.rfind("siegel ", 0) == 0)
        for (auto* opt : app.get_subcommand("siegel")->get_subcommand(name.substr(7))->get_options())
            if (opt->count() > 0 && opt->get_name() != "--help") inputs[opt->get_name()] = input_value(opt);
    bundle["inputs"] = inputs;
    json sums = json::object();
    for (const auto& p : out.fixtures) sums[std::filesystem::path(p).filename().string()] = sha256_file(p);
    if (!sums.empty()) bundle["fixtures"] = sums;
    bundle["ok"] = out.ok;
    bundle["results"] = out.results;
    if (w.timing)
        bundle["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream text;
    if (w.as_csv)
        render_csv(text, bundle);
    else if (w.as_markdown)
        render_markdown(text, bundle);
    else
        text << bundle.dump(2) << "\n";
    if (w.out.empty()) {
        std::cout << text.str();
    } else {
        std::ofstream f(w.out);
        if (!f) {
            std::cerr << "error: cannot write " << w.out << "\n";
            return 2;
        }
        f << text.str();
    }
    return out.ok ? 0 : 1;
}
