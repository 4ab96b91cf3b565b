// isoflag: classification, invariants, canonicalization and verification for
// triple flag varieties of the split odd orthogonal group, over exact
// arithmetic. All stdout is deterministic JSON with sorted keys; timing and
// progress go to stderr.
//
// Exit codes: 0 pass, 2 input error, 3 canonicalization assertion failure,
// 4 verification mismatch, 5 budget exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "isoflag/canonicalize.hpp"
#include "isoflag/classifier.hpp"
#include "isoflag/format.hpp"
#include "isoflag/oracle.hpp"
#include "isoflag/rv_gens.hpp"
#include "isoflag/suites.hpp"

using namespace isoflag;
using nlohmann::json;

namespace {

struct cli_error : std::runtime_error {
    int code;
    cli_error(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

// composition syntax: comma-separated positive integers, with the sugar
// "n" (the rank) and "k^j" / "k^n" for repeated parts
FlagType parse_composition(const std::string& text, int n) {
    FlagType f;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) throw cli_error(2, "empty composition part");
        auto caret = part.find('^');
        auto value_of = [&](const std::string& tok) -> int {
            if (tok == "n") return n;
            try {
                size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                return v;
            } catch (...) {
                throw cli_error(2, "bad composition token '" + tok + "'");
            }
        };
        if (caret == std::string::npos) {
            f.parts.push_back(value_of(part));
        } else {
            int base = value_of(part.substr(0, caret));
            int reps = value_of(part.substr(caret + 1));
            if (reps < 0) throw cli_error(2, "negative repetition");
            for (int i = 0; i < reps; ++i) f.parts.push_back(base);
        }
    }
    if (f.parts.empty()) throw cli_error(2, "empty composition");
    return f;
}

json matrix_json(const Mat<Fp>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

json tuple_json(const InvariantTuple& t) {
    json b = json::array();
    for (int i = 1; i <= 15; ++i) b.push_back(t.bi(i));
    return {{"b", b}, {"eps", t.eps}};
}

struct FlagFile {
    int n = 0;
    long long p = 0;
    std::vector<Mat<Fp>> blocks;
};

FlagFile read_flag_file(const std::string& path, int expect_blocks) {
    std::ifstream is(path);
    if (!is) throw cli_error(2, "cannot open " + path);
    FlagFile f;
    if (!(is >> f.n >> f.p)) throw cli_error(2, path + ": bad flag header");
    if (f.p == 0) throw cli_error(2, path + ": rational flags are not supported here");
    try {
        for (int b = 0; b < expect_blocks; ++b) {
            MatrixHeader h = read_matrix_header(is);
            if (h.p != f.p) throw cli_error(2, path + ": block field differs from header");
            if (h.cols != 2 * f.n + 1) throw cli_error(2, path + ": block has wrong ambient dimension");
            f.blocks.push_back(read_matrix_fp(is, h));
        }
    } catch (const parse_error& e) {
        throw cli_error(2, path + ": " + e.what());
    } catch (const field_error& e) {
        throw cli_error(2, path + ": " + e.what());
    }
    return f;
}

Mat<Fp> read_matrix_file(const std::string& path, long long expect_p, int expect_cols) {
    std::ifstream is(path);
    if (!is) throw cli_error(2, "cannot open " + path);
    try {
        MatrixHeader h = read_matrix_header(is);
        if (h.p != expect_p) throw cli_error(2, path + ": field mismatch");
        if (h.cols != expect_cols) throw cli_error(2, path + ": wrong ambient dimension");
        return read_matrix_fp(is, h);
    } catch (const parse_error& e) {
        throw cli_error(2, path + ": " + e.what());
    } catch (const field_error& e) {
        throw cli_error(2, path + ": " + e.what());
    }
}

void apply_env_budget() {
    if (const char* env = std::getenv("ISOFLAG_BUDGET")) {
        try {
            oracle_budget().max_points = std::stoll(env);
        } catch (...) {
            throw cli_error(2, "ISOFLAG_BUDGET is not a number");
        }
    }
}

int run(int argc, char** argv) {
    CLI::App app{"orbit classification for triple flag varieties of split odd orthogonal groups"};
    app.require_subcommand(1);

    auto* cls = app.add_subcommand("classify", "finite-type decision for a triple of flag types");
    std::string a_text, b_text, c_text, square_classes = "finite";
    int cls_n = 0;
    cls->add_option("--a", a_text)->required();
    cls->add_option("--b", b_text)->required();
    cls->add_option("--c", c_text)->required();
    cls->add_option("--n", cls_n)->required();
    cls->add_option("--square-classes", square_classes)->check(CLI::IsMember({"finite", "infinite"}));

    auto* can = app.add_subcommand("canonicalize", "move a maximal isotropic onto its canonical form");
    std::string pair_path, v_path;
    int can_n = 0;
    long long can_p = 0;
    can->add_option("--n", can_n)->required();
    can->add_option("--p", can_p)->required();
    can->add_option("--pair", pair_path)->required();
    can->add_option("--v", v_path)->required();

    auto* inv = app.add_subcommand("invariants", "orbit invariant tuple of a maximal isotropic");
    std::string ipair_path, iv_path;
    int inv_n = 0;
    long long inv_p = 0;
    inv->add_option("--n", inv_n)->required();
    inv->add_option("--p", inv_p)->required();
    inv->add_option("--pair", ipair_path)->required();
    inv->add_option("--v", iv_path)->required();

    auto* tup = app.add_subcommand("tuples", "admissible invariant tuples of a pair shape");
    int tn = 0, ta0 = 0, tap = 0, tam = 0, ta1 = 0;
    tup->add_option("--n", tn)->required();
    tup->add_option("--a0", ta0);
    tup->add_option("--a-plus", tap);
    tup->add_option("--a-minus", tam);
    tup->add_option("--a1", ta1);

    auto* ver = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    int ver_n = 0;
    long long ver_p = 0;
    ver->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
    ver->add_option("--n", ver_n);
    ver->add_option("--p", ver_p);

    auto* gen = app.add_subcommand("generators", "dump stabilizer generators with provenance tags");
    int gn = 0, ga0 = 0, gap = 0, gam = 0, ga1 = 0;
    long long gp = 0;
    std::string gtuple;
    gen->add_option("--n", gn)->required();
    gen->add_option("--p", gp)->required();
    gen->add_option("--a0", ga0);
    gen->add_option("--a-plus", gap);
    gen->add_option("--a-minus", gam);
    gen->add_option("--a1", ga1);
    gen->add_option("--tuple", gtuple,
                    "comma-separated b1..b15,eps selecting an R_V context instead of R");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    apply_env_budget();

    if (*cls) {
        if (cls_n <= 0) throw cli_error(2, "--n must be positive");
        TripleType t;
        t.n = cls_n;
        t.a = parse_composition(a_text, cls_n);
        t.b = parse_composition(b_text, cls_n);
        t.c = parse_composition(c_text, cls_n);
        try {
            t.validate();
        } catch (const precondition_error& e) {
            throw cli_error(2, e.what());
        }
        Verdict v = is_finite_type(t, square_classes == "finite");
        json out = {{"finite", v.finite},
                    {"cases", v.cases},
                    {"dimT", triple_dim(t)},
                    {"dimG", group_dim(cls_n)},
                    {"normalized", v.normalized.str()}};
        if (!v.finite) out["excluded_by"] = v.excluded_by;
        std::cout << out.dump(1) << "\n";
        return 0;
    }
    if (*can || *inv) {
        int n = *can ? can_n : inv_n;
        long long p = *can ? can_p : inv_p;
        if (n <= 0) throw cli_error(2, "--n must be positive");
        if (p == 0) throw cli_error(2, "the rational field is not supported for this subcommand");
        FlagFile pf = read_flag_file(*can ? pair_path : ipair_path, 2);
        if (pf.n != n || pf.p != p) throw cli_error(2, "pair file header disagrees with --n/--p");
        Fp ex(0, p);
        Subspace<Fp> Up = Subspace<Fp>::span(pf.blocks[0]);
        Subspace<Fp> Um = Subspace<Fp>::span(pf.blocks[1]);
        Mat<Fp> vm = read_matrix_file(*can ? v_path : iv_path, p, 2 * n + 1);
        Subspace<Fp> V = Subspace<Fp>::span(vm);
        PairShape shape;
        try {
            shape = pair_shape(Up, Um, n);
            if (!is_normalized_pair(Up, Um, shape))
                throw cli_error(2, "the pair is not in the normalized model position");
        } catch (const precondition_error& e) {
            throw cli_error(2, e.what());
        }
        if (*inv) {
            InvariantTuple t;
            try {
                t = compute_b(Up, Um, V, shape);
            } catch (const precondition_error& e) {
                throw cli_error(2, e.what());
            }
            std::cout << json{{"tuple", tuple_json(t)}}.dump(1) << "\n";
            return 0;
        }
        try {
            CanonicalizeResult r = canonicalize(Up, Um, V, shape);
            json stages = json::array();
            for (const auto& st : r.trace.stages)
                stages.push_back({{"label", st.label},
                                  {"g", matrix_json(st.g.mat())},
                                  {"v", matrix_json(st.v_after.basis())}});
            json out = {{"tuple", tuple_json(r.tuple)}, {"g", matrix_json(r.g.mat())}, {"stages", stages}};
            std::cout << out.dump(1) << "\n";
            return 0;
        } catch (const stage_error& e) {
            std::cerr << e.what() << "\n";
            return 3;
        } catch (const precondition_error& e) {
            throw cli_error(2, e.what());
        }
    }
    if (*tup) {
        try {
            PairShape s = PairShape::make(tn, ta0, tap, tam, ta1);
            json out = json::array();
            for (const auto& t : enumerate_tuples(s)) out.push_back(tuple_json(t));
            std::cout << json{{"count", out.size()}, {"tuples", out}}.dump(1) << "\n";
            return 0;
        } catch (const precondition_error& e) {
            throw cli_error(2, e.what());
        }
    }
    if (*ver) {
        try {
            SuiteResult r = run_suite(suite, ver_n, ver_p);
            std::cout << json{{"suite", r.name}, {"pass", r.pass}, {"report", r.report}}.dump(1) << "\n";
            return r.pass ? 0 : 4;
        } catch (const budget_error& e) {
            std::cerr << e.what() << "\n";
            return 5;
        }
    }
    if (*gen) {
        try {
            PairShape s = PairShape::make(gn, ga0, gap, gam, ga1);
            GeneratorSet gens;
            if (gtuple.empty()) {
                gens = r_generators(s, gp);
            } else {
                InvariantTuple t;
                std::stringstream ss(gtuple);
                std::string tok;
                std::vector<int> vals;
                while (std::getline(ss, tok, ',')) vals.push_back(std::stoi(tok));
                if (vals.size() != 16) throw cli_error(2, "--tuple needs b1..b15,eps (16 values)");
                for (int i = 1; i <= 15; ++i) t.bi(i) = vals[i - 1];
                t.eps = vals[15];
                if (!tuple_consistent(s, t)) throw cli_error(2, "tuple inconsistent with the shape");
                gens = rv_generators(s, t, gp);
            }
            json arr = json::array();
            for (const auto& e : gens.elems)
                arr.push_back({{"provenance", e.provenance}, {"matrix", matrix_json(e.g.mat())}});
            std::cout << json{{"context", gens.context}, {"generators", arr}}.dump(1) << "\n";
            return 0;
        } catch (const precondition_error& e) {
            throw cli_error(2, e.what());
        }
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cli_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
