#pragma once

// JSON reports shared by the command-line tool and the Python module.

#include <string>
#include <vector>

#include <json.hpp>

namespace qact::report {

using Json = nlohmann::ordered_json;

struct Options {
    int n = 4;
    std::string group;       // named group instead of Q(2^n)
    std::string signature;
    std::string ske_file;    // JSON: group or n, signature, elliptic, hyperbolic
    std::string family;      // F0, F1, F2, C
    int param = 0;
    std::string subgroup;
    std::string fixture;
    unsigned seed = 1;

    std::string a = "0,0,0,0";
    std::string b;
    bool count_orbits = true;
    int max_b = 4;
    int max_periods = 0;     // exhaustive genus-zero census when > 0
    int starts = 16;
    double tol = 1e-9;
    std::string t = "-1";
    bool verify = false;
    int samples = 200;
    bool update = false;
    std::string expected_dir;
};

/// ok is false when a check ran and failed; errors are thrown as qact::Error.
struct Outcome {
    Json results;
    bool ok = true;
    std::vector<std::string> fixtures;  // paths whose checksums belong in the bundle
};

Outcome groups(const Options& o);
Outcome chars(const Options& o);
Outcome decompose(const Options& o);
Outcome classify(const Options& o);
Outcome families(const Options& o);
Outcome genus_zero(const Options& o);
Outcome quotient(const Options& o);
Outcome extend(const Options& o);
/// what: "verify", "group" or "locus"
Outcome siegel(const Options& o, const std::string& what);
Outcome curve(const Options& o);
/// Regenerates every table; compares with (or with update, rewrites) expected/reproduce_n{n}.json.
Outcome reproduce(const Options& o);

}  // namespace qact::report
