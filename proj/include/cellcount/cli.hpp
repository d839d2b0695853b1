#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cellcount/complex.hpp"
#include "cellcount/integral_counts.hpp"
#include "cellcount/modular_counts.hpp"
#include "cellcount/orientations.hpp"
#include "cellcount/tutte.hpp"
#include "cellcount/unimodularity.hpp"
#include "cellcount/verification.hpp"

namespace cellcount {

namespace detail {

inline IntMatrix read_matrix_file(std::string const &path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open matrix file " + path);
    std::vector<std::vector<long long>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<long long> row;
        long long v = 0;
        while (ls >> v)
            row.push_back(v);
        if (!ls.eof())
            throw Error("matrix file " + path + " has a non-integer token");
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    if (!rows.empty())
        for (auto const &row : rows)
            if (row.size() != rows.front().size())
                throw Error("matrix file " + path + " has ragged rows");
    return IntMatrix::from_rows(rows);
}

inline CellComplex complex_from_matrix(IntMatrix const &m, std::string name) {
    std::vector<std::string> ridges, facets;
    for (std::size_t i = 0; i < m.rows(); ++i)
        ridges.push_back("r" + std::to_string(i));
    for (std::size_t j = 0; j < m.cols(); ++j)
        facets.push_back("f" + std::to_string(j));
    return from_boundary(std::move(name), std::move(ridges), std::move(facets), m);
}

inline CellComplex read_graph_file(std::string const &path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open graph file " + path);
    long long vertices = 0;
    if (!(in >> vertices) || vertices < 0)
        throw Error("graph file " + path + " must start with the vertex count");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    long long u = 0, v = 0;
    while (in >> u) {
        if (!(in >> v))
            throw Error("graph file " + path + " has a dangling edge endpoint");
        if (u < 1 || v < 1)
            throw Error("graph file " + path + " has a non-positive vertex id");
        edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    }
    return graph_complex(static_cast<std::size_t>(vertices), edges, "graph");
}

inline CellComplex read_complex_file(std::string const &path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open complex file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (nlohmann::json::exception const &e) {
        throw Error("invalid JSON in " + path + ": " + e.what());
    }
    return complex_from_json(j);
}

// One complex per invocation, from exactly one source option.
struct InputSpec {
    std::string builtin_name, file_path, graph_path, matrix_path;
    std::vector<long long> skeleton;

    void add_options(CLI::App *cmd) {
        cmd->add_option("--builtin", builtin_name, "built-in complex (pyramid, rp2)");
        cmd->add_option("--file", file_path, "complex description as JSON");
        cmd->add_option("--graph", graph_path,
                        "graph file: vertex count, then one 1-based edge per line");
        cmd->add_option("--matrix", matrix_path,
                        "boundary matrix file: one whitespace-separated row per line");
        cmd->add_option("--simplex-skeleton", skeleton,
                        "d-skeleton of the simplex on n vertices, as 'n d'")
            ->expected(2);
    }

    CellComplex load() const {
        int sources = (builtin_name.empty() ? 0 : 1) + (file_path.empty() ? 0 : 1) +
                      (graph_path.empty() ? 0 : 1) + (matrix_path.empty() ? 0 : 1) +
                      (skeleton.empty() ? 0 : 1);
        if (sources != 1)
            throw Error("choose exactly one input: --builtin, --file, --graph, "
                        "--matrix, or --simplex-skeleton");
        if (!builtin_name.empty())
            return builtin(builtin_name);
        if (!file_path.empty())
            return read_complex_file(file_path);
        if (!graph_path.empty())
            return read_graph_file(graph_path);
        if (!matrix_path.empty())
            return complex_from_matrix(read_matrix_file(matrix_path), "matrix");
        if (skeleton[0] < 1 || skeleton[1] < 0)
            throw IndexOutOfRange("simplex skeleton parameters");
        return simplex_skeleton(static_cast<std::size_t>(skeleton[0]),
                                static_cast<std::size_t>(skeleton[1]));
    }
};

inline unsigned resolve_subset_bits(long long flag) {
    if (flag > 0)
        return static_cast<unsigned>(flag);
    if (char const *env = std::getenv("CELLCOUNT_MAX_SUBSET_BITS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw Error("invalid CELLCOUNT_MAX_SUBSET_BITS value");
        return static_cast<unsigned>(v);
    }
    return 20;
}

inline std::string int_list(std::vector<Int> const &values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i)
        s += (i ? "," : "") + values[i].str();
    return s;
}

} // namespace detail

// Cross-check every identity the library exposes on a single complex:
// independent routes to the same quasipolynomial, brute-force agreement,
// reciprocity on both the modular and the integral side, hierarchy
// implications, and the totally unimodular support corollaries. Checks whose
// preconditions fail are reported as skipped, never silently dropped.
inline VerificationReport run_verification_suite(CellComplex const &x, long k_max,
                                                 unsigned subset_bits) {
    if (k_max < 1)
        throw IndexOutOfRange("k-max must be >= 1");
    VerificationReport report;
    auto guarded = [&](std::string const &name, auto &&fn) {
        try {
            fn();
        } catch (NotShrinkable const &e) {
            report.add_skip(name, e.what());
        } catch (NotSQU const &e) {
            report.add_skip(name, e.what());
        } catch (HasLoop const &e) {
            report.add_skip(name, e.what());
        } catch (HasColoop const &e) {
            report.add_skip(name, e.what());
        } catch (NotTotallyUnimodular const &e) {
            report.add_skip(name, e.what());
        } catch (PeriodSearchExhausted const &e) {
            report.add_skip(name, e.what());
        } catch (SizeLimitExceeded const &e) {
            report.add_skip(name, e.what());
        }
    };

    Quasipolynomial chi = chromatic_ie(x, subset_bits);
    Quasipolynomial phi = flow_ie(x, subset_bits);
    Quasipolynomial tau = tension_qp(x, subset_bits);

    guarded("chromatic routes agree", [&] {
        report.add_equal("chromatic routes agree", chi.to_string(),
                         chromatic_delcon(x).to_string(),
                         "inclusion-exclusion vs deletion-contraction");
    });
    guarded("flow routes agree", [&] {
        report.add_equal("flow routes agree", phi.to_string(), flow_delcon(x).to_string(),
                         "inclusion-exclusion vs deletion-contraction");
    });
    guarded("tension routes agree", [&] {
        report.add_equal("tension routes agree", tau.to_string(),
                         tension_delcon(x).to_string(),
                         "cut scaling vs deletion-contraction");
    });
    guarded("tutte specializations", [&] { report.merge(check_specializations(x, subset_bits)); });

    guarded("chromatic matches enumeration", [&] {
        std::vector<Int> lhs, rhs;
        for (long k = 1; k <= k_max; ++k) {
            lhs.push_back(chi.evaluate_int(Int(k)));
            rhs.push_back(brute_chromatic(x, Int(k)));
        }
        report.add_equal("chromatic matches enumeration", detail::int_list(lhs),
                         detail::int_list(rhs), "values at k = 1.." + std::to_string(k_max));
    });
    guarded("flow matches enumeration", [&] {
        std::vector<Int> lhs, rhs;
        for (long k = 1; k <= k_max; ++k) {
            lhs.push_back(phi.evaluate_int(Int(k)));
            rhs.push_back(brute_flow(x, Int(k)));
        }
        report.add_equal("flow matches enumeration", detail::int_list(lhs),
                         detail::int_list(rhs), "values at k = 1.." + std::to_string(k_max));
    });
    guarded("tension matches enumeration", [&] {
        std::vector<Int> lhs, rhs;
        for (long k = 1; k <= k_max; ++k) {
            lhs.push_back(tau.evaluate_int(Int(k)));
            rhs.push_back(brute_tension(x, Int(k)));
        }
        report.add_equal("tension matches enumeration", detail::int_list(lhs),
                         detail::int_list(rhs), "values at k = 1.." + std::to_string(k_max));
    });
    guarded("cut space equals tension space", [&] {
        for (long k = 1; k <= k_max; ++k)
            if (!verify_cut_equals_tension_mod(x, Int(k))) {
                report.add_fail("cut space equals tension space", "cut vectors mod k",
                                "tension vectors mod k", "differ at k = " + std::to_string(k));
                return;
            }
        report.add_pass("cut space equals tension space", "k = 1.." + std::to_string(k_max),
                        "k = 1.." + std::to_string(k_max));
    });

    guarded("modular flow reciprocity", [&] {
        int sign = (x.num_facets() - complex_rank(x)) % 2 == 0 ? 1 : -1;
        std::vector<Int> lhs, rhs;
        for (long k = 1; k <= k_max; ++k) {
            lhs.push_back(count_flow_pairs(x, Int(k)));
            rhs.push_back(Int(sign) * phi.evaluate_int(Int(-k)));
        }
        report.add_equal("modular flow reciprocity", detail::int_list(lhs),
                         detail::int_list(rhs), "pair counts vs values at -k");
    });
    guarded("modular tension reciprocity", [&] {
        int sign = complex_rank(x) % 2 == 0 ? 1 : -1;
        std::vector<Int> lhs, rhs;
        for (long k = 1; k <= k_max; ++k) {
            lhs.push_back(count_tension_pairs(x, Int(k)));
            rhs.push_back(Int(sign) * tau.evaluate_int(Int(-k)));
        }
        report.add_equal("modular tension reciprocity", detail::int_list(lhs),
                         detail::int_list(rhs), "pair counts vs values at -k");
    });
    guarded("modular coloring reciprocity", [&] {
        int sign = x.num_ridges() % 2 == 0 ? 1 : -1;
        std::vector<Int> lhs, rhs;
        for (long k = 1; k <= k_max; ++k) {
            lhs.push_back(count_coloring_pairs(x, Int(k)));
            rhs.push_back(Int(sign) * chi.evaluate_int(Int(-k)));
        }
        report.add_equal("modular coloring reciprocity", detail::int_list(lhs),
                         detail::int_list(rhs), "pair counts vs values at -k");
    });

    long closed_max = std::min<long>(k_max, 3);
    auto integral_side = [&](std::string const &name, CountKind kind, std::size_t dim) {
        guarded(name, [&] {
            int sign = dim % 2 == 0 ? 1 : -1;
            IntegralFit fitted = fit_integral_qp(x, kind);
            std::vector<Int> lhs, rhs;
            for (long k = 0; k <= closed_max; ++k) {
                lhs.push_back(closed_pairs_count(x, kind, Int(k)));
                rhs.push_back(Int(sign) * fitted.qp.evaluate_int(Int(-k)));
            }
            report.add_equal(name, detail::int_list(lhs), detail::int_list(rhs),
                             "closed pair counts vs fitted values at -k");
        });
    };
    std::size_t rho = complex_rank(x);
    integral_side("integral coloring reciprocity", CountKind::chromatic, x.num_ridges());
    integral_side("integral tension reciprocity", CountKind::tension, rho);
    integral_side("integral flow reciprocity", CountKind::flow, x.num_facets() - rho);

    guarded("unimodularity hierarchy", [&] {
        bool tu = is_TU(x.boundary);
        bool squ = is_SQU(x.boundary, subset_bits);
        bool ish = is_ISH(x.boundary);
        bool qu = is_QU(x.boundary);
        bool ok = (!tu || (squ && ish)) && (!squ || qu) && (!ish || qu);
        Int pb = period_bound(x.boundary, subset_bits);
        bool divides = pb % Int(static_cast<long>(chi.period())) == 0;
        std::string classes = std::string("tu=") + (tu ? "1" : "0") + " squ=" + (squ ? "1" : "0") +
                              " ish=" + (ish ? "1" : "0") + " qu=" + (qu ? "1" : "0");
        if (ok && divides)
            report.add_pass("unimodularity hierarchy", classes, "implications hold");
        else
            report.add_fail("unimodularity hierarchy", classes,
                            "period bound " + pb.str() + ", chromatic period " +
                                std::to_string(chi.period()),
                            ok ? "chromatic period does not divide the bound"
                               : "class implications violated");
    });
    guarded("tu support corollaries", [&] {
        report.merge(verify_tu_support_corollaries(x, Int(std::min<long>(k_max, 2))));
    });
    return report;
}

inline int run_command(std::vector<std::string> const &args, std::ostream &out,
                       std::ostream &err) {
    CLI::App app{"exact chromatic, tension and flow counting for cell complexes"};
    app.require_subcommand(1);

    struct CommonOptions {
        detail::InputSpec input;
        long long bits = 0;
        std::string output;
        void add_options(CLI::App *cmd) {
            input.add_options(cmd);
            cmd->add_option("--max-subset-bits", bits,
                            "bound on 2^n enumerations (default 20, or the "
                            "CELLCOUNT_MAX_SUBSET_BITS environment variable)");
            cmd->add_option("--output", output, "write the JSON result to a file");
        }
    };

    std::map<std::string, CommonOptions> common;
    std::map<std::string, CLI::App *> cmds;
    for (auto const *name : {"info", "chromatic", "tension", "flow", "tutte", "orientations",
                             "classify", "verify"})
        cmds[name] = app.add_subcommand(name, "");
    cmds["info"]->description("complex summary: sizes, rank, loops, coloops");
    cmds["chromatic"]->description("modular chromatic counting quasipolynomial");
    cmds["tension"]->description("modular tension counting quasipolynomial");
    cmds["flow"]->description("modular flow counting quasipolynomial");
    cmds["tutte"]->description("corank-nullity polynomial, classical and arithmetic");
    cmds["orientations"]->description("acyclic and totally cyclic orientations");
    cmds["classify"]->description("unimodularity classes and the period bound");
    cmds["verify"]->description("cross-check all counting identities on one complex");
    for (auto &[name, cmd] : cmds)
        common[name].add_options(cmd);

    std::map<std::string, std::string> methods;
    std::map<std::string, long long> kvalues;
    std::map<std::string, CLI::Option *> kopts;
    for (auto const *name : {"chromatic", "tension", "flow"}) {
        methods[name] = "ie";
        kvalues[name] = 0;
        cmds[name]
            ->add_option("--method", methods[name],
                         "ie (inclusion-exclusion), delcon (deletion-contraction), "
                         "tutte (corank-nullity specialization), brute (enumeration)")
            ->check(CLI::IsMember({"ie", "delcon", "tutte", "brute"}));
        kopts[name] = cmds[name]->add_option("--k", kvalues[name],
                                             "modulus for --method brute");
    }
    long long k_max = 3;
    cmds["verify"]->add_option("--k-max", k_max, "largest modulus cross-checked (default 3)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (CLI::ParseError const &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        std::string verb;
        for (auto const &[name, cmd] : cmds)
            if (cmd->parsed())
                verb = name;
        CommonOptions const &opts = common[verb];
        CellComplex x = opts.input.load();
        unsigned bits = detail::resolve_subset_bits(opts.bits);

        auto emit = [&](nlohmann::ordered_json const &j) {
            std::string text = j.dump();
            if (!opts.output.empty()) {
                std::ofstream f(opts.output);
                if (!f)
                    throw Error("cannot write " + opts.output);
                f << text << "\n";
            } else {
                out << text << "\n";
            }
        };

        if (verb == "info") {
            auto lc = loops_and_coloops(x);
            nlohmann::ordered_json j;
            j["name"] = x.name;
            j["ridges"] = x.num_ridges();
            j["facets"] = x.num_facets();
            j["rank"] = complex_rank(x);
            nlohmann::ordered_json loops = nlohmann::ordered_json::array();
            for (auto f : lc.loops)
                loops.push_back(x.facets[f]);
            nlohmann::ordered_json coloops = nlohmann::ordered_json::array();
            for (auto f : lc.coloops)
                coloops.push_back(x.facets[f]);
            j["loops"] = std::move(loops);
            j["coloops"] = std::move(coloops);
            j["cut_tension_index"] = cut_tension_index(x).str();
            emit(j);
            return 0;
        }
        if (verb == "chromatic" || verb == "tension" || verb == "flow") {
            std::string const &method = methods[verb];
            // Facet-free convention: the flow command reports the zero count.
            bool facet_free_flow = verb == "flow" && x.num_facets() == 0;
            if (method == "brute") {
                if (kopts[verb]->count() == 0)
                    throw Error("--method brute needs --k");
                Int k(kvalues[verb]);
                Int value = verb == "chromatic"  ? brute_chromatic(x, k)
                            : verb == "tension" ? brute_tension(x, k)
                                                 : brute_flow(x, k);
                if (facet_free_flow)
                    value = 0;
                nlohmann::ordered_json j;
                j["k"] = kvalues[verb];
                j["value"] = value.str();
                emit(j);
                return 0;
            }
            Quasipolynomial q;
            if (facet_free_flow)
                q = Quasipolynomial();
            else if (method == "ie")
                q = verb == "chromatic"  ? chromatic_ie(x, bits)
                    : verb == "tension" ? tension_qp(x, bits)
                                         : flow_ie(x, bits);
            else if (method == "delcon")
                q = verb == "chromatic"  ? chromatic_delcon(x)
                    : verb == "tension" ? tension_delcon(x)
                                         : flow_delcon(x);
            else
                q = verb == "chromatic"  ? chromatic_from_tutte(x, bits)
                    : verb == "tension" ? tension_from_tutte(x, bits)
                                         : flow_from_tutte(x, bits);
            emit(to_json(q));
            return 0;
        }
        if (verb == "tutte") {
            nlohmann::ordered_json j;
            j["tutte"] = to_json(tutte(x, bits));
            j["arithmetic_tutte"] = to_json(arithmetic_tutte(x, bits));
            emit(j);
            return 0;
        }
        if (verb == "orientations") {
            auto acyclic = enumerate_acyclic(x, bits);
            auto tc = enumerate_totally_cyclic(x, bits);
            nlohmann::ordered_json j;
            nlohmann::ordered_json a;
            a["count"] = acyclic.size();
            nlohmann::ordered_json alist = nlohmann::ordered_json::array();
            for (auto const &eps : acyclic)
                alist.push_back(orientation_to_string(eps));
            a["orientations"] = std::move(alist);
            nlohmann::ordered_json t;
            t["count"] = tc.size();
            nlohmann::ordered_json tlist = nlohmann::ordered_json::array();
            for (auto const &eps : tc)
                tlist.push_back(orientation_to_string(eps));
            t["orientations"] = std::move(tlist);
            j["acyclic"] = std::move(a);
            j["totally_cyclic"] = std::move(t);
            emit(j);
            return 0;
        }
        if (verb == "classify") {
            nlohmann::ordered_json j;
            j["tu"] = is_TU(x.boundary);
            j["squ"] = is_SQU(x.boundary, bits);
            j["ish"] = is_ISH(x.boundary);
            j["qu"] = is_QU(x.boundary);
            Int pb = period_bound(x.boundary, bits);
            if (pb <= Int(std::numeric_limits<long long>::max()))
                j["period_bound"] = static_cast<long long>(pb);
            else
                j["period_bound"] = pb.str();
            emit(j);
            return 0;
        }
        // verify
        VerificationReport report = run_verification_suite(x, static_cast<long>(k_max), bits);
        emit(to_json(report));
        return report.all_passed() ? 0 : 1;
    } catch (Error const &e) {
        err << e.what() << "\n";
        return 2;
    }
}

} // namespace cellcount
