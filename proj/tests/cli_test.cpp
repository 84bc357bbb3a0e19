#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    std::string out;
    int exit_code = -1;
};

RunResult run(const std::string& args, bool keep_stderr = false) {
    const std::string cmd =
        std::string(CONTACT_CLI_PATH) + " " + args + (keep_stderr ? "" : " 2>/dev/null");
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string golden(const std::string& name) {
    return slurp(fs::path(CONTACT_GOLDEN_DIR) / name);
}

std::string fixture(const std::string& name) {
    return (fs::path(CONTACT_GOLDEN_DIR) / "fixtures" / name).string();
}

void expect_matches_golden(const std::string& args, const std::string& golden_name) {
    const RunResult r = run(args);
    EXPECT_EQ(r.exit_code, 0) << args;
    EXPECT_EQ(r.out, golden(golden_name)) << args;
}

}  // namespace

TEST(CliGolden, Generate) {
    expect_matches_golden("generate --octahedron 3", "generate_octahedron_3.json");
    expect_matches_golden("generate --double-oct", "generate_double_oct.json");
    expect_matches_golden("generate --augmented 2", "generate_augmented_2.json");
    expect_matches_golden("generate --cubocta13", "generate_cubocta13.json");
    expect_matches_golden("generate --fcc-ball 2.1", "generate_fcc_ball.json");
}

TEST(CliGolden, Contacts) {
    const std::string packing = (fs::path(CONTACT_GOLDEN_DIR) / "generate_cubocta13.json").string();
    expect_matches_golden("contacts " + packing, "contacts_cubocta13.json");
}

TEST(CliGolden, Bounds) {
    expect_matches_golden("bounds --formula ii --n 100", "bounds_ii_100.json");
    expect_matches_golden("bounds --formula harborth --n 7", "bounds_harborth_7.json");
    expect_matches_golden("bounds --formula iii --n 19", "bounds_iii_19.json");
    expect_matches_golden("bounds --formula i --n 13", "bounds_i_13.json");
    expect_matches_golden("bounds --formula improved --n 13", "bounds_improved_13.json");
    expect_matches_golden("bounds --formula dimension --n 1000", "bounds_dimension_1000.json");
    expect_matches_golden("bounds --formula conjectural --n 100", "bounds_conjectural_100.json");
}

TEST(CliGolden, BoundsConjecturalIsFlagged) {
    const RunResult r = run("bounds --formula conjectural --n 100");
    EXPECT_TRUE(json::parse(r.out).at("conjectural").get<bool>());
}

TEST(CliGolden, Constants) {
    expect_matches_golden("constants", "constants.csv");
    expect_matches_golden("constants --format json", "constants.json");
}

TEST(CliGolden, ReduceAndMapFcc) {
    expect_matches_golden("reduce " + fixture("fcc_lattice.json"), "reduce_fcc.json");
    expect_matches_golden("map-fcc " + fixture("cubic2_lattice.json") + " " + fixture("l_points.json"),
                          "mapfcc_l.json");
}

TEST(CliGolden, Verify) {
    expect_matches_golden("verify covering --r sqrt2 --samples 50000", "verify_covering_sqrt2.json");
    expect_matches_golden("verify molnar --alpha pi/4 --samples 50000", "verify_molnar_pi4.json");
    expect_matches_golden("verify eq12 --k 3", "verify_eq12_k3.json");
    expect_matches_golden("verify density --k 2 --r sqrt2 --samples 200000 --seed 1",
                          "verify_density_k2.json");
    expect_matches_golden("verify surface --k 2 --r sqrt2 --samples 2000", "verify_surface_k2.json");
    expect_matches_golden("verify isoperimetric --k 2 --r sqrt2 --samples 200000",
                          "verify_isoperimetric_k2.json");
}

TEST(CliGolden, Search) {
    expect_matches_golden("search --n 6", "search_n6.json");
    expect_matches_golden("search --table 8", "search_table_8.csv");
}

TEST(CliGolden, Export) {
    const std::string packing = (fs::path(CONTACT_GOLDEN_DIR) / "generate_cubocta13.json").string();
    expect_matches_golden("export --format xyz --in " + packing, "export_cubocta.xyz");
    expect_matches_golden("export --format csv --in " + packing, "export_cubocta_edges.csv");
}

TEST(CliPipe, GenerateIntoContacts) {
    const std::string cmd = std::string(CONTACT_CLI_PATH) + " generate --octahedron 3 | " +
                            CONTACT_CLI_PATH + " contacts - 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    const json j = json::parse(out);
    EXPECT_EQ(j.at("n"), 19);
    EXPECT_EQ(j.at("contact_number"), 60);
}

TEST(CliExitCodes, VerificationFailureIsTwo) {
    EXPECT_EQ(run("verify covering --r 1.40 --samples 50000").exit_code, 2);
    EXPECT_EQ(run("verify covering --r sqrt2 --samples 50000").exit_code, 0);
}

TEST(CliExitCodes, DomainErrorIsOne) {
    EXPECT_EQ(run("bounds --formula nonsense --n 10").exit_code, 1);
    EXPECT_EQ(run("bounds --formula iii --n 20").exit_code, 1);  // 20 is not k(2k^2+1)/3
    EXPECT_EQ(run("generate --octahedron 1").exit_code, 1);
    EXPECT_EQ(run("bounds --formula i --n 1").exit_code, 1);
}

TEST(CliExitCodes, UsageErrorIsSixtyFour) {
    EXPECT_EQ(run("--no-such-flag").exit_code, 64);
    EXPECT_EQ(run("generate --bogus").exit_code, 64);
}

TEST(CliManifest, WrittenBesideOutputAndRerunsAreByteIdentical) {
    const fs::path dir = fs::temp_directory_path() / "contact_cli_manifest_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string out = (dir / "cub.json").string();

    ASSERT_EQ(run("generate --cubocta13 -o " + out).exit_code, 0);
    const std::string first = slurp(out);
    EXPECT_EQ(first, golden("generate_cubocta13.json"));

    const json manifest = json::parse(slurp(out + ".manifest.json"));
    EXPECT_EQ(manifest.at("version"), "0.1.0");
    EXPECT_TRUE(manifest.contains("command"));
    EXPECT_TRUE(manifest.contains("config"));
    EXPECT_TRUE(manifest.contains("wall_time_s"));
    ASSERT_EQ(manifest.at("outputs").size(), 1u);

    ASSERT_EQ(run("generate --cubocta13 -o " + out).exit_code, 0);
    EXPECT_EQ(slurp(out), first);
    fs::remove_all(dir);
}

TEST(CliManifest, SearchTableWitnessesAreListed) {
    const fs::path dir = fs::temp_directory_path() / "contact_cli_table_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string out = (dir / "table.csv").string();
    const std::string wit = (dir / "wit").string();

    ASSERT_EQ(run("search --table 6 --out-dir " + wit + " -o " + out).exit_code, 0);
    const json manifest = json::parse(slurp(out + ".manifest.json"));
    EXPECT_EQ(manifest.at("outputs").size(), 1u + 5u);  // table + witnesses for n = 2..6
    for (int n = 2; n <= 6; ++n)
        EXPECT_TRUE(fs::exists(dir / "wit" / ("witness_" + std::to_string(n) + ".json")));

    // witness files are loadable packings
    const json w6 = json::parse(slurp(dir / "wit" / "witness_6.json"));
    EXPECT_EQ(w6.at("centers").size(), 6u);
    fs::remove_all(dir);
}
