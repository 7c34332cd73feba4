#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

fs::path workdir() {
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("unlearn_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string write(const std::string& name, const std::string& text) {
    fs::path p = workdir() / name;
    std::ofstream(p) << text;
    return p.string();
}

Result run(const std::string& args, const std::string& env = "") {
    const char* bin = std::getenv("UNLEARN_LAB_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = env + " '" + std::string(bin) + "' " + args + " 2>" + (workdir() / "stderr.txt").string();
    Result r;
    FILE* f = ::popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), got);
    const int st = ::pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string stderr_text() {
    std::ifstream in(workdir() / "stderr.txt");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("dims on thresholds m=4") {
    auto cls = write("t4.json", R"({"generator": {"kind": "thresholds", "m": 4}})");
    Result r = run("dims " + cls + " --witness");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["v"] == 1);
    CHECK(j["dims"]["vc"]["value"] == 1);
    CHECK(j["dims"]["star"]["value"] == 2);
    CHECK(j["dims"]["hollow_star"]["value"] == 2);
    CHECK(j["dims"]["eluder"]["value"] == 4);
    CHECK(j["dims"]["littlestone"]["value"] == 2);
    CHECK(j["dims"]["mis"]["value"] == 4);
    CHECK(j["dims"]["eluder"]["witness"].size() == 4);
}

TEST_CASE("explicit class file") {
    auto cls = write("explicit.json", R"({"domain": 3, "hypotheses": [[0,0,0],[1,0,0],[1,1,0],[1,1,1]]})");
    Result r = run("dims " + cls);
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["dims"]["vc"]["value"] == 1);
}

TEST_CASE("vs-encode and merge") {
    auto cls = write("t4b.json", R"({"generator": {"kind": "thresholds", "m": 4}})");
    auto data = write("d.json", R"({"items": [{"x": 1, "y": 1}, {"x": 2, "y": 1}]})");
    Result r = run("vs-encode " + cls + " " + data);
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["encoding"]["realizable"] == true);
    CHECK(j["encoding"]["pairs"] == json::parse(R"([{"x": 1, "y": 1}])"));
    CHECK(j["pair_count"] == 1);
    CHECK(j["bits"] == 2 + 3);

    auto a = write("a.json", R"({"realizable": true, "pairs": [{"x": 0, "y": 1}]})");
    auto b = write("b.json", R"({"realizable": true, "pairs": [{"x": 1, "y": 0}]})");
    Result m = run("merge " + cls + " " + a + " " + b);
    REQUIRE(m.code == 0);
    CHECK(json::parse(m.out)["encoding"]["realizable"] == false);
}

TEST_CASE("scheme run") {
    auto cls = write("t8.json", R"({"generator": {"kind": "thresholds", "m": 8}})");
    auto data = write("d8.json", R"({"items": [{"x": 0, "y": 1}, {"x": 1, "y": 0}, {"x": 5, "y": 1}]})");
    auto qs = write("q8.json", R"({"queries": [{"indices": []}, {"indices": [1]}, {"indices": [2, 3]}]})");
    auto rec = (workdir() / "rec.json").string();
    Result r = run("scheme run --scheme merkle --class " + cls + " --dataset " + data + " --queries " + qs + " --record " + rec);
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["answer"] == false);
    CHECK(j["queries"][0]["answer"] == false);
    CHECK(j["queries"][1]["answer"] == true);
    CHECK(j["queries"][2]["answer"] == true);
    CHECK(j["record"]["aux_bits"] == 1);
    CHECK(fs::exists(rec));

    Result rep = run("report " + rec + " --format json");
    REQUIRE(rep.code == 0);
    CHECK(json::parse(rep.out)["records"].size() == 1);

    auto big = write("qbig.json", R"({"indices": [1, 2, 3]})");
    Result b = run("scheme run --scheme bounded --k 2 --class " + cls + " --dataset " + data + " --queries " + big);
    CHECK(b.code == 1);
}

TEST_CASE("lb demo") {
    Result r = run(R"(lb demo --instance vclb --params '{"beta": 0.5, "m": 8}' --scheme trivial --secret 10110010)");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["recovered"] == "10110010");
    CHECK(j["ok"] == true);

    Result e = run(R"(lb demo --instance eluder --params '{"m": 8}' --scheme merkle)");
    REQUIRE(e.code == 0);
    CHECK(json::parse(e.out)["ok"] == true);

    Result w = run(R"(lb demo --instance erm-whitebox --params '{"m": 4}' --scheme erm-trivial --secret 0101)");
    REQUIRE(w.code == 0);
    CHECK(json::parse(w.out)["recovered"] == "0101");

    CHECK(run(R"(lb demo --instance vclb --scheme trivial --secret 101)").code == 2);
}

TEST_CASE("report is deterministic") {
    Result a = run("report --standard --format json", "UNLEARN_LAB_SEED=7");
    Result b = run("report --standard --format json", "UNLEARN_LAB_SEED=7");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(j["v"] == 1);
    CHECK(j["all_pass"] == true);
    Result none = run("report --format json");
    REQUIRE(none.code == 0);
    CHECK(json::parse(none.out)["records"].empty());
    Result t = run("report --standard --format table");
    REQUIRE(t.code == 0);
    CHECK(t.out.find("merkle") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("--help").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("dims /nonexistent/class.json").code == 2);

    auto bad = write("bad.json", "{\n  \"generator\": {\"kind\": \"thresholds\",, }\n}");
    Result r = run("dims " + bad);
    CHECK(r.code == 2);
    CHECK(stderr_text().find("line 2") != std::string::npos);

    auto cls = write("t3.json", R"({"generator": {"kind": "thresholds", "m": 3}})");
    auto outside = write("outside.json", R"({"items": [{"x": 9, "y": 1}]})");
    CHECK(run("vs-encode " + cls + " " + outside).code == 1);
    auto badlabel = write("badlabel.json", R"({"items": [{"x": 0, "y": 2}]})");
    CHECK(run("vs-encode " + cls + " " + badlabel).code == 1);
    CHECK(run("dims " + cls, "UNLEARN_LAB_SEED=abc").code == 2);
}
