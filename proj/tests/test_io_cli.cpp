#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <strata/strata.hpp>

using strata::ActionModel;
using strata::BettiTable;
using strata::Code;
using strata::json;
using strata::SimplicialComplex;
using strata::StratifiedSpace;

namespace {

namespace fs = std::filesystem;

/** Scratch directory shared by the file-based tests, removed at exit. */
const fs::path& work_dir()
{
    static struct Dir {
        fs::path path;
        Dir()
        {
            path = fs::temp_directory_path()
                   / ("strata_io_test_" + std::to_string(::getpid()));
            fs::create_directories(path);
        }
        ~Dir() { fs::remove_all(path); }
    } dir;
    return dir.path;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path& p, const std::string& text)
{
    std::ofstream out(p);
    out << text;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "")
{
    const char* cli = std::getenv("STRATA_CLI");
    REQUIRE(cli != nullptr);
    static int counter = 0;
    fs::path out = work_dir() / ("out" + std::to_string(counter) + ".txt");
    fs::path err = work_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = env_prefix + "\"" + std::string(cli) + "\" " + args + " > "
                      + out.string() + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

}  // namespace

TEST_CASE("complex documents round-trip")
{
    SimplicialComplex oct = strata::octahedron();
    json j = strata::to_json(oct);
    CHECK(j["format"] == "strata-complex/1");
    CHECK(strata::complex_from_json(j) == oct);

    std::string once = strata::dump_canonical(j);
    std::string twice = strata::dump_canonical(strata::to_json(strata::complex_from_json(json::parse(once))));
    CHECK(once == twice);

    SECTION("defective documents are rejected")
    {
        json bad = j;
        bad["format"] = "strata-complex/2";
        CHECK_THROWS_AS(strata::complex_from_json(bad), strata::StrataError);

        bad = j;
        bad["vertices"].push_back(99);
        CHECK_THROWS_AS(strata::complex_from_json(bad), strata::StrataError);

        CHECK_THROWS_AS(strata::complex_from_json(json::array()), strata::StrataError);
    }
}

TEST_CASE("space documents round-trip")
{
    std::vector<StratifiedSpace> spaces = {
        strata::cone_stratified(strata::octahedron()),
        strata::suspension_stratified(strata::octahedron()),
        strata::catalog_action("weighted_hopf_2").total,  // has an empty filtration level
    };
    for (const StratifiedSpace& sp : spaces) {
        json j = strata::to_json(sp);
        REQUIRE(j["format"] == "strata-space/1");
        StratifiedSpace back = strata::space_from_json(j);
        CHECK(back.complex == sp.complex);
        REQUIRE(back.strata.size() == sp.strata.size());
        for (size_t i = 0; i < sp.strata.size(); ++i) {
            CHECK(back.strata[i].id == sp.strata[i].id);
            CHECK(back.strata[i].open_cells == sp.strata[i].open_cells);
            CHECK(back.strata[i].singular == sp.strata[i].singular);
        }
        std::string once = strata::dump_canonical(j);
        CHECK(once == strata::dump_canonical(strata::to_json(back)));
    }
}

TEST_CASE("action documents round-trip for the whole catalog")
{
    for (const std::string& name : strata::catalog_names()) {
        INFO(name);
        ActionModel m = strata::catalog_action(name);
        json j = strata::to_json(m);
        REQUIRE(j["format"] == "strata-action/1");
        ActionModel back = strata::action_from_json(j);
        CHECK(back.name == m.name);
        CHECK(back.stratum_map == m.stratum_map);
        CHECK(back.isotropy == m.isotropy);
        CHECK(back.euler_flags == m.euler_flags);
        CHECK(back.total.complex == m.total.complex);
        CHECK(back.orbit.complex == m.orbit.complex);
        CHECK(back.links.size() == m.links.size());
        CHECK_NOTHROW(strata::validate_action(back));

        std::string once = strata::dump_canonical(j);
        std::string twice = strata::dump_canonical(strata::to_json(back));
        CHECK(once == twice);
    }
}

TEST_CASE("actions may reference catalog spaces by name")
{
    json j;
    j["format"] = "strata-action/1";
    j["name"] = "hopf_by_reference";
    j["space"] = "catalog:hopf/total";
    j["orbit_space"] = "catalog:hopf/orbit";
    j["stratum_map"] = json::array({json::array({"S3_0", "S2_0"})});
    j["isotropy"] = json::object({{"S3_0", "mobile"}});

    ActionModel m = strata::action_from_json(j);
    CHECK(m.total.complex == strata::hopf_total_complex());
    CHECK(m.orbit.complex == strata::octahedron());
    CHECK_NOTHROW(strata::validate_action(m));

    j["space"] = "catalog:hopf/sideways";
    CHECK_THROWS_AS(strata::action_from_json(j), strata::StrataError);
    j["space"] = "catalog-hopf";
    CHECK_THROWS_AS(strata::action_from_json(j), strata::StrataError);
}

TEST_CASE("table and report serialization")
{
    BettiTable t;
    t.set(0, 1);
    t.set(2, 5);
    json j = strata::to_json(t);
    CHECK(j == json::array({1, 0, 5}));
    CHECK(strata::betti_from_json(j) == t);
    CHECK_THROWS_AS(strata::betti_from_json(json::object()), strata::StrataError);

    SECTION("LES reports only carry ranks when feasible")
    {
        json good = strata::to_json(strata::les_feasible({0, 1, 1, 0}));
        CHECK(good["feasible"] == true);
        CHECK(good["arrow_ranks"] == json::array({0, 1, 0, 0}));
        json bad = strata::to_json(strata::les_feasible({1, 0}));
        CHECK(bad["feasible"] == false);
        CHECK(bad["violation_position"] == 2);
        CHECK_FALSE(bad.contains("arrow_ranks"));
    }

    SECTION("verification reports")
    {
        ActionModel m = strata::catalog_action("cone_hopf");
        strata::VerifyReport rep =
            strata::verify(m, strata::Perversity::constant(m.orbit, 3));
        json v = strata::to_json(rep);
        CHECK(v["pass"] == true);
        CHECK(v["qbar"]["S0_0"] == 3);
        CHECK(v["classification"]["labels"]["S0_0"] == "perverse");
        CHECK(strata::betti_from_json(v["tables"]["gysin"]) == rep.gysin);
        CHECK(v["failures"].empty());
        CHECK(strata::dump_canonical(v) == strata::dump_canonical(strata::to_json(rep)));
    }
}

TEST_CASE("json files round-trip through disk")
{
    fs::path file = work_dir() / "roundtrip.json";
    json j = strata::to_json(strata::cone_stratified(strata::octahedron()));
    strata::save_json_file(file.string(), j);
    json back = strata::load_json_file(file.string());
    CHECK(back == j);
    CHECK(strata::dump_canonical(back) == slurp(file));

    CHECK_THROWS_AS(strata::load_json_file((work_dir() / "absent.json").string()),
                    strata::StrataError);
    spit(work_dir() / "broken.json", "{ this is not json");
    CHECK_THROWS_AS(strata::load_json_file((work_dir() / "broken.json").string()),
                    strata::StrataError);
}

TEST_CASE("cli validates spaces")
{
    fs::path good = work_dir() / "cone_oct.json";
    strata::save_json_file(good.string(),
                           strata::to_json(strata::cone_stratified(strata::octahedron())));
    CliResult r = run_cli("validate " + good.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "valid\n");

    fs::path bad = work_dir() / "dangling.json";
    strata::save_json_file(
        bad.string(),
        strata::to_json(strata::trivial_stratification(
            SimplicialComplex::from_simplices({{0, 1, 2}, {2, 3}}))));
    r = run_cli("validate " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("DENSITY_VIOLATION") != std::string::npos);

    SECTION("json report")
    {
        r = run_cli("validate --json " + bad.string());
        CHECK(r.exit_code == 1);
        json rep = json::parse(r.out);
        CHECK(rep["ok"] == false);
        CHECK(rep["problems"][0]["code"] == "DENSITY_VIOLATION");
    }

    SECTION("malformed input exits 2 with a position")
    {
        fs::path broken = work_dir() / "broken_space.json";
        spit(broken, "{ \"format\": \"strata-space/1\", ");
        r = run_cli("validate " + broken.string());
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("parse error at line") != std::string::npos);

        r = run_cli("validate " + (work_dir() / "no_such.json").string());
        CHECK(r.exit_code == 2);
    }

    SECTION("repair-fullness upgrades a repairable space")
    {
        strata::StratifiedSpace rough = strata::make_stratified(
            strata::hopf_total_complex(), {{}, {{0, 4}, {4, 1}, {1, 5}, {5, 0}}});
        fs::path file = work_dir() / "rough.json";
        strata::save_json_file(file.string(), strata::to_json(rough));
        r = run_cli("validate " + file.string());
        CHECK(r.exit_code == 1);
        CHECK(r.out.find("NOT_FULL") != std::string::npos);

        fs::path repaired = work_dir() / "repaired.json";
        r = run_cli("validate --repair-fullness -o " + repaired.string() + " " + file.string());
        CHECK(r.exit_code == 0);
        CHECK(r.out == "valid\n");
        StratifiedSpace rp = strata::space_from_json(strata::load_json_file(repaired.string()));
        CHECK(validate_pseudomanifold(rp).ok());
    }
}

TEST_CASE("cli computes intersection homology tables")
{
    fs::path space = work_dir() / "ih_space.json";
    strata::save_json_file(space.string(),
                           strata::to_json(strata::cone_stratified(strata::octahedron())));

    CliResult r = run_cli("ih --space " + space.string() + " --perversity const:1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "(1)\n");

    r = run_cli("ih --space " + space.string() + " --perversity top");
    CHECK(r.out == "(1)\n");

    r = run_cli("ih --space " + space.string() + " --perversity const:2");
    CHECK(r.out == "(1, 0, 1)\n");

    r = run_cli("ih --space " + space.string() + " --perversity S0_0=2");
    CHECK(r.out == "(1, 0, 1)\n");

    r = run_cli("ih --space " + space.string() + " --perversity S9_9=2");
    CHECK(r.exit_code == 2);

    r = run_cli("ih --space " + space.string() + " --perversity wild");
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli constructs spaces")
{
    fs::path oct = work_dir() / "oct.json";
    strata::save_json_file(oct.string(), strata::to_json(strata::octahedron()));

    fs::path cone = work_dir() / "cone.json";
    CliResult r = run_cli("construct cone --link " + oct.string() + " -o " + cone.string());
    REQUIRE(r.exit_code == 0);
    StratifiedSpace sp = strata::space_from_json(strata::load_json_file(cone.string()));
    CHECK(sp.dim() == 3);
    CHECK(validate_pseudomanifold(sp).ok());
    CHECK(sp.singular_strata().size() == 1);

    SECTION("suspension")
    {
        r = run_cli("construct susp --link " + oct.string());
        REQUIRE(r.exit_code == 0);
        StratifiedSpace s = strata::space_from_json(json::parse(r.out));
        CHECK(s.dim() == 3);
        CHECK(s.singular_strata().size() == 2);
    }
    SECTION("product with a manifold")
    {
        fs::path c4 = work_dir() / "c4.json";
        strata::save_json_file(c4.string(), strata::to_json(strata::cycle_complex(4)));
        r = run_cli("construct product --manifold " + c4.string() + " --space " + cone.string());
        REQUIRE(r.exit_code == 0);
        StratifiedSpace s = strata::space_from_json(json::parse(r.out));
        CHECK(s.dim() == 4);
        CHECK(validate_pseudomanifold(s).ok());
    }
    SECTION("bad inputs exit 2")
    {
        r = run_cli("construct cone --link " + cone.string());  // a space, not a complex
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("cli verifies catalog actions")
{
    CliResult r = run_cli("gysin --catalog hopf --qbar 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);

    r = run_cli("gysin --catalog cone_hopf --qbar 1..4");
    CHECK(r.exit_code == 0);
    std::string sweep_out = r.out;
    CHECK(std::count(sweep_out.begin(), sweep_out.end(), '\n') == 4);
    CHECK(sweep_out.find("gysin=(1, 0, 1)") != std::string::npos);

    SECTION("identical invocations print identical bytes")
    {
        CliResult again = run_cli("gysin --catalog cone_hopf --qbar 1..4");
        CHECK(again.out == sweep_out);
        CliResult one_thread = run_cli("gysin --catalog cone_hopf --qbar 1..4",
                                       "STRATA_THREADS=1 ");
        CliResult four_threads = run_cli("gysin --catalog cone_hopf --qbar 1..4",
                                         "STRATA_THREADS=4 ");
        CHECK(one_thread.out == sweep_out);
        CHECK(four_threads.out == sweep_out);
    }
    SECTION("an action file is as good as a catalog name")
    {
        fs::path action = work_dir() / "cone_hopf.json";
        strata::save_json_file(action.string(),
                               strata::to_json(strata::catalog_action("cone_hopf")));
        CliResult from_file = run_cli("gysin --action " + action.string() + " --qbar 1..4");
        CHECK(from_file.exit_code == 0);
        CHECK(from_file.out == sweep_out);
    }
    SECTION("json sweep output")
    {
        r = run_cli("gysin --catalog cone_hopf --qbar 2..3 --json");
        CHECK(r.exit_code == 0);
        json reports = json::parse(r.out);
        REQUIRE(reports.is_array());
        REQUIRE(reports.size() == 2);
        CHECK(reports[0]["pass"] == true);
        CHECK(reports[1]["tables"]["residues"] == json::array({0, 0, 1}));
    }
    SECTION("unknown catalog entries exit 2")
    {
        r = run_cli("gysin --catalog moebius --qbar 0");
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("cli lists and dumps the catalog")
{
    CliResult r = run_cli("catalog");
    CHECK(r.exit_code == 0);
    for (const std::string& name : strata::catalog_names())
        CHECK(r.out.find(name) != std::string::npos);

    r = run_cli("catalog --dump-catalog susp_hopf");
    CHECK(r.exit_code == 0);
    ActionModel m = strata::action_from_json(json::parse(r.out));
    CHECK(m.name == "susp_hopf");
    CHECK_NOTHROW(strata::validate_action(m));

    CliResult again = run_cli("catalog --dump-catalog susp_hopf");
    CHECK(again.out == r.out);

    r = run_cli("catalog --dump-catalog moebius");
    CHECK(r.exit_code == 2);
}
