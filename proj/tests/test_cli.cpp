#include <catch2/catch_amalgamated.hpp>

#include "cellcount/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cellcount;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

// Scratch file that cleans up after itself.
struct TempFile {
    std::filesystem::path path;
    explicit TempFile(std::string const &name, std::string const &content) {
        path = std::filesystem::temp_directory_path() / name;
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

} // namespace

TEST_CASE("quasipolynomial commands print pinned JSON") {
    auto r = run({"chromatic", "--builtin", "rp2", "--method", "ie"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"period\":2,\"constituents\":[[\"-2\",\"1\"],[\"-1\",\"1\"]]}\n");
    CHECK(r.err.empty());

    // Every route prints the identical quasipolynomial.
    for (std::string method : {"delcon", "tutte"}) {
        auto alt = run({"flow", "--builtin", "pyramid", "--method", method});
        CHECK(alt.code == 0);
        CHECK(alt.out == "{\"period\":1,\"constituents\":[[\"-1\",\"1\"]]}\n");
    }

    auto k4 = run({"chromatic", "--simplex-skeleton", "4", "1"});
    CHECK(k4.code == 0);
    CHECK(k4.out == "{\"period\":1,\"constituents\":[[\"0\",\"-6\",\"11\",\"-6\",\"1\"]]}\n");
}

TEST_CASE("classify and info print pinned JSON") {
    auto c = run({"classify", "--builtin", "pyramid"});
    CHECK(c.code == 0);
    CHECK(c.out == "{\"tu\":true,\"squ\":true,\"ish\":true,\"qu\":true,\"period_bound\":1}\n");

    auto c2 = run({"classify", "--builtin", "rp2"});
    CHECK(c2.code == 0);
    CHECK(c2.out == "{\"tu\":false,\"squ\":false,\"ish\":false,\"qu\":false,\"period_bound\":2}\n");

    auto i = run({"info", "--builtin", "pyramid"});
    CHECK(i.code == 0);
    CHECK(i.out == "{\"name\":\"pyramid\",\"ridges\":8,\"facets\":5,\"rank\":4,"
                   "\"loops\":[],\"coloops\":[],\"cut_tension_index\":\"1\"}\n");
}

TEST_CASE("brute method needs and uses --k") {
    auto missing = run({"chromatic", "--builtin", "rp2", "--method", "brute"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("--k") != std::string::npos);

    auto r = run({"chromatic", "--builtin", "rp2", "--method", "brute", "--k", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"k\":4,\"value\":\"2\"}\n");

    auto bad = run({"chromatic", "--builtin", "rp2", "--method", "nope"});
    CHECK(bad.code == 2);
}

TEST_CASE("tutte and orientations commands") {
    auto t = run({"tutte", "--builtin", "rp2"});
    CHECK(t.code == 0);
    CHECK(t.out == "{\"tutte\":{\"terms\":[{\"x\":1,\"y\":0,\"coeff\":\"1\"}]},"
                   "\"arithmetic_tutte\":{\"terms\":[{\"x\":0,\"y\":0,\"coeff\":\"1\"},"
                   "{\"x\":1,\"y\":0,\"coeff\":\"1\"}]}}\n");

    auto o = run({"orientations", "--builtin", "rp2"});
    CHECK(o.code == 0);
    CHECK(o.out == "{\"acyclic\":{\"count\":2,\"orientations\":[\"+\",\"-\"]},"
                   "\"totally_cyclic\":{\"count\":0,\"orientations\":[]}}\n");

    auto p = run({"orientations", "--builtin", "pyramid"});
    auto j = nlohmann::json::parse(p.out);
    CHECK(j["acyclic"]["count"] == 30);
    CHECK(j["totally_cyclic"]["count"] == 2);
    CHECK(j["totally_cyclic"]["orientations"][0] == "---++");
}

TEST_CASE("file inputs feed every loader") {
    TempFile graph("cellcount_cli_k3.txt", "3\n1 2\n2 3\n1 3\n");
    auto g = run({"chromatic", "--graph", graph.str(), "--method", "delcon"});
    CHECK(g.code == 0);
    CHECK(g.out == "{\"period\":1,\"constituents\":[[\"0\",\"2\",\"-3\",\"1\"]]}\n");

    TempFile matrix("cellcount_cli_m.txt", "1 2\n2 4\n");
    auto m = run({"flow", "--matrix", matrix.str()});
    CHECK(m.code == 0);
    CHECK(m.out == "{\"period\":2,\"constituents\":[[\"-2\",\"1\"],[\"-1\",\"1\"]]}\n");

    TempFile complex_json("cellcount_cli_pyr.json", to_json(builtin("pyramid")).dump());
    auto f = run({"tension", "--file", complex_json.str()});
    auto direct = run({"tension", "--builtin", "pyramid"});
    CHECK(f.code == 0);
    CHECK(f.out == direct.out);
}

TEST_CASE("facet-free complexes report the zero flow count") {
    TempFile graph("cellcount_cli_edgeless.txt", "3\n");
    auto q = run({"flow", "--graph", graph.str()});
    CHECK(q.code == 0);
    CHECK(q.out == "{\"period\":1,\"constituents\":[[]]}\n");

    auto b = run({"flow", "--graph", graph.str(), "--method", "brute", "--k", "5"});
    CHECK(b.code == 0);
    CHECK(b.out == "{\"k\":5,\"value\":\"0\"}\n");
}

TEST_CASE("input selection must be unambiguous") {
    CHECK(run({"chromatic"}).code == 2);
    TempFile matrix("cellcount_cli_amb.txt", "1\n");
    CHECK(run({"chromatic", "--builtin", "rp2", "--matrix", matrix.str()}).code == 2);
    CHECK(run({"chromatic", "--builtin", "nosuch"}).code == 2);
    CHECK(run({"info", "--file", "/definitely/missing.json"}).code == 2);

    TempFile bad("cellcount_cli_bad.json", "not json");
    CHECK(run({"info", "--file", bad.str()}).code == 2);
    TempFile ragged("cellcount_cli_ragged.txt", "1 2\n3\n");
    CHECK(run({"info", "--matrix", ragged.str()}).code == 2);

    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("subset bound comes from flag, then environment, then default") {
    setenv("CELLCOUNT_MAX_SUBSET_BITS", "2", 1);
    auto small = run({"chromatic", "--builtin", "pyramid"});
    CHECK(small.code == 2);
    CHECK(small.err.find("SizeLimitExceeded") != std::string::npos);

    auto flag_wins = run({"chromatic", "--builtin", "pyramid", "--max-subset-bits", "20"});
    CHECK(flag_wins.code == 0);

    setenv("CELLCOUNT_MAX_SUBSET_BITS", "junk", 1);
    CHECK(run({"chromatic", "--builtin", "pyramid"}).code == 2);
    unsetenv("CELLCOUNT_MAX_SUBSET_BITS");
    CHECK(run({"chromatic", "--builtin", "pyramid"}).code == 0);
}

TEST_CASE("--output writes the result to a file instead of stdout") {
    auto path = std::filesystem::temp_directory_path() / "cellcount_cli_out.json";
    std::filesystem::remove(path);
    auto r = run({"classify", "--builtin", "pyramid", "--output", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(content == "{\"tu\":true,\"squ\":true,\"ish\":true,\"qu\":true,\"period_bound\":1}\n");
    std::filesystem::remove(path);
}

TEST_CASE("verify command aggregates the identity checks") {
    auto r = run({"verify", "--builtin", "pyramid", "--k-max", "2"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    std::size_t passes = 0;
    for (auto const &c : j["checks"]) {
        CHECK(c["status"] == "pass");
        ++passes;
    }
    CHECK(passes >= 15);

    // Preconditions that fail must surface as skipped checks, not errors.
    auto r2 = run({"verify", "--builtin", "rp2"});
    CHECK(r2.code == 0);
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["passed"] == true);
    bool skipped_delcon = false, skipped_tutte = false, passed_reciprocity = false;
    for (auto const &c : j2["checks"]) {
        if (c["name"] == "chromatic routes agree" && c["status"] == "skipped")
            skipped_delcon = true;
        if (c["name"] == "tutte specializations" && c["status"] == "skipped")
            skipped_tutte = true;
        if (c["name"] == "modular coloring reciprocity" && c["status"] == "pass")
            passed_reciprocity = true;
    }
    CHECK(skipped_delcon);
    CHECK(skipped_tutte);
    CHECK(passed_reciprocity);

    CHECK(run({"verify", "--builtin", "rp2", "--k-max", "0"}).code == 2);
}

TEST_CASE("verification report JSON shape") {
    VerificationReport rep;
    rep.add_pass("alpha", "1", "1");
    rep.add_fail("beta", "2", "3", "counts differ");
    CHECK(to_json(rep)["passed"] == false);
    CHECK(to_json(rep)["checks"][1]["witness"] == "counts differ");
    CHECK_FALSE(rep.all_passed());
}
