#include "npzeta/curve_file.hpp"
#include "npzeta/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace npz;
using json = nlohmann::json;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args)
{
    Run r;
    const std::string cmd = std::string(NPZ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string data(const std::string& name)
{
    return std::string(NPZ_SOURCE_DIR) + "/tests/data/" + name;
}

ErrorKind parse_error_kind(const std::string& text)
{
    try {
        parse_curve_string(text);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("parse the diamond")
{
    const Curve c = parse_curve_string("p 7\nn 1\nterm 1 0 1\nterm -1 0 1\nterm 0 1 1\nterm 0 -1 1\nterm 0 0 1\n");
    CHECK(c.field->p() == 7);
    CHECK(c.field->n() == 1);
    CHECK(c.f.size() == 5);
    for (auto e : {LatticePoint{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0, 0}})
        CHECK(c.field->equal(c.f.coeff(e), c.field->one()));
}

TEST_CASE("comments, negative coefficients and extension fields")
{
    const Curve c = parse_curve_string("# genus two\np 5\nterm 0 2 1  # leading\nterm 5 0 -1\nterm 1 0 9\n");
    CHECK(c.field->equal(c.f.coeff({5, 0}), c.field->from_int(4)));
    CHECK(c.field->equal(c.f.coeff({1, 0}), c.field->from_int(4)));

    const Curve e = parse_curve_string("p 3\nn 2\nmodulus 1 0\nterm 1 0 0 1\nterm 0 1 1 0\nterm -1 -1 2 2\n");
    CHECK(e.field->spec().rbar == std::vector<u64>{1, 0, 1});
    CHECK(e.field->equal(e.f.coeff({1, 0}), e.field->gen()));

    const Curve full = parse_curve_string("p 3\nn 2\nmodulus 1 0 1\nterm 1 0 0 1\n");
    CHECK(full.field->spec().rbar == std::vector<u64>{1, 0, 1});
}

TEST_CASE("parse errors")
{
    CHECK(parse_error_kind("p 7\nterm 1 0 1\nterm 1 0 2\n") == ErrorKind::DuplicateTerm);
    CHECK(parse_error_kind("p 9\nterm 1 0 1\n") == ErrorKind::ParseError);
    try {
        parse_curve_string("p 9\nterm 1 0 1\n");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("p not prime") != std::string::npos);
    }
    CHECK(parse_error_kind("p 7\nterm 1 0\n") == ErrorKind::ParseError);
    CHECK(parse_error_kind("term 1 0 1\n") == ErrorKind::ParseError);
    CHECK(parse_error_kind("p 7\nbogus 1\n") == ErrorKind::ParseError);
    CHECK(parse_error_kind("p 2\nn 2\nmodulus 1 0\nterm 1 0 1 0\n") == ErrorKind::ParseError);
    CHECK(parse_error_kind("p 3\nn 2\nmodulus 1 0 2\nterm 1 0 1 0\n") == ErrorKind::ParseError);
}

TEST_CASE("emit and parse round trip")
{
    for (const char* name : {"diamond_7.curve", "diamond_49.curve", "genus2_5.curve"}) {
        const Curve c = parse_curve_file(data(name));
        const Curve d = parse_curve_string(emit_curve(c));
        CHECK(c.field->spec() == d.field->spec());
        CHECK(c.f.to_string() == d.f.to_string());
    }
}

TEST_CASE("info")
{
    const Run r = run_cli("info " + data("diamond_7.curve") + " --json");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["genus"] == 1);
    CHECK(j["boundary_points"] == 4);
    CHECK(j["volume_x2"] == 4);
    CHECK(j["precision_N"] == 31);
    CHECK(j["chi"] == json::array({-1, 1}));
    CHECK(j["kappa"] == json::array({-3, 3}));

    const Run text = run_cli("info " + data("diamond_7.curve"));
    CHECK(text.status == 0);
    CHECK(text.out.find("planned N        31") != std::string::npos);
}

TEST_CASE("zeta as JSON")
{
    const Run r = run_cli("zeta " + data("diamond_7.curve") + " --json");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    for (const char* key : {"p", "n", "q", "chi", "P", "genus", "boundary_points", "volume_x2", "precision_N",
                            "point_counts", "timings_ms"})
        CHECK(j.contains(key));
    CHECK(j["chi"] == json::array({2401, -1029, 490, -154, 21, -1}));
    CHECK(j["point_counts"].size() == 6);
    CHECK(j["point_counts"][0] == json::array({1, 4}));
    CHECK(j["q"] == 7);
}

TEST_CASE("verify")
{
    const Run r = run_cli("verify " + data("diamond_7.curve") + " --kmax 4 --json");
    CHECK(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["all_match"] == true);
    CHECK(j["verification"].size() == 4);

    const Run text = run_cli("verify " + data("diamond_7.curve"));
    CHECK(text.status == 0);
    CHECK(text.out.find("all counts match") != std::string::npos);
}

TEST_CASE("errors exit with status 2")
{
    CHECK(run_cli("zeta " + data("diamond_5.curve")).status == 2);
    CHECK(run_cli("info /nonexistent/file.curve").status == 2);
}
