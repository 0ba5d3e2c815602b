#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = frobext::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(FROBEXT_TEST_DATA) + "/" + name; }

} // namespace

TEST_CASE("ext")
{
    Result a = run({"--json", "ext", data("unit-q3.json"), data("tate2-q3.json")});
    CHECK(a.code == 0);
    CHECK(json::parse(a.out)["ext1_order"] == 8);

    Result b = run({"--json", "ext", data("unit-q5.json"), data("h1e-f5.json")});
    CHECK(b.code == 0);
    CHECK(json::parse(b.out)["ext1_order"] == 9);

    Result t = run({"ext", data("unit-q3.json"), data("tate2-q3.json")});
    CHECK(t.code == 0);
    CHECK(t.out.find('8') != std::string::npos);

    CHECK(run({"ext", data("malformed.json"), data("unit-q3.json")}).code == 2);
    CHECK(run({"ext", data("missing.json"), data("unit-q3.json")}).code == 2);
    CHECK(run({"ext", data("unit-q3.json"), data("unit-q5.json")}).code == 2);
}

TEST_CASE("verify-local")
{
    Result a = run({"--json", "verify-local", "--prime", "7", "--random", "100"});
    CHECK(a.code == 0);
    json ja = json::parse(a.out);
    CHECK(ja["passed"] == 100);
    CHECK(ja["failed"] == 0);

    Result p = run({"verify-local", "--prime", "p", "--case", data("special-coprime.json")});
    CHECK(p.code == 0);

    Result h = run({"verify-local", "--prime", "7", "--case", data("multiple-common-root.json")});
    CHECK(h.code == 3);

    CHECK(run({"verify-local", "--prime", "6", "--random", "3"}).code == 2);
    CHECK(run({"verify-local", "--prime", "5", "--case", data("special-coprime.json")}).code == 2);
    CHECK(run({"verify-local", "--prime", "7"}).code == 2);
    CHECK(run({"verify-local", "--prime", "7", "--random", "3", "--case", data("special-coprime.json")}).code == 2);
}

TEST_CASE("determinism across thread counts")
{
    for (const char* prime : {"3", "p"}) {
        Result one = run({"--json", "verify-local", "--prime", prime, "--random", "24", "--seed", "9", "--threads", "1"});
        Result four = run({"--json", "verify-local", "--prime", prime, "--random", "24", "--seed", "9", "--threads", "4"});
        CHECK(one.code == 0);
        CHECK(one.out == four.out);
    }
}

TEST_CASE("failing cases replay")
{
    Result first = run({"--json", "verify-local", "--case", data("multiple-common-root.json")});
    REQUIRE(first.code == 3);
    json j = json::parse(first.out);
    REQUIRE(j["cases"][0].contains("case"));

    fs::path dir = fs::temp_directory_path() / "frobext-replay";
    fs::create_directories(dir);
    fs::path file = dir / "case.json";
    std::ofstream(file) << j["cases"][0]["case"].dump();

    Result again = run({"--json", "verify-local", "--case", file.string()});
    CHECK(again.code == 3);
    CHECK(json::parse(again.out)["cases"][0]["case"] == j["cases"][0]["case"]);

    Result saved = run({"verify-local", "--case", file.string(), "--save-failures", dir.string()});
    CHECK(saved.code == 3);
    bool found = false;
    for (auto& e : fs::directory_iterator(dir)) found = found || e.path().filename().string().rfind("case-", 0) == 0;
    CHECK(found);
    fs::remove_all(dir);
}

TEST_CASE("zeta")
{
    Result p1 = run({"--json", "zeta", "--variety", data("p1-q4.json")});
    CHECK(p1.code == 0);
    json a = json::parse(p1.out);
    CHECK(a["leading"] == "4/3");
    CHECK(a["chi_times"] == "1/3");
    CHECK(a["equal"] == true);

    Result r0 = run({"--json", "zeta", "--variety", data("p1-q4.json"), "--r", "0"});
    CHECK(r0.code == 0);
    CHECK(json::parse(r0.out)["chi_O"] == 0);

    Result e = run({"--json", "zeta", "--variety", data("e-f5.json")});
    CHECK(e.code == 0);
    CHECK(json::parse(e.out)["points"] == 9);

    CHECK(run({"zeta", "--variety", data("unsupported-kind.json")}).code == 2);
    CHECK(run({"zeta", "--variety", data("e-f5.json"), "--r", "1"}).code == 3);
    CHECK(run({"zeta", "--variety", data("e-f5.json"), "--bound", "4"}).code == 2);
}

TEST_CASE("global options")
{
    CHECK(run({"--precision", "2", "ext", data("unit-q3.json"), data("unit-q3.json")}).code == 2);
    CHECK(run({"--precision", "12", "ext", data("unit-q3.json"), data("unit-q3.json")}).code == 0);
    CHECK(run({"--version"}).code == 0);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}
