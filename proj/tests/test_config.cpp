#include <doctest.h>

#include <string>

#include "vortexlab/config.hpp"

using namespace vortexlab;

TEST_SUITE("config") {

TEST_CASE("minimal config applies documented defaults") {
    const RunConfig cfg = parse_config(
        "command=stationarity\nnu=1.0\nn=2\na=1.0,1.0\n");
    CHECK(cfg.command == "stationarity");
    CHECK(cfg.dt == 0.001);
    CHECK(cfg.eps == 0.01);
    CHECK(cfg.n == 2);
    CHECK(cfg.a.size() == 2);
    CHECK(cfg.nu == 1.0);
}

TEST_CASE("sectioned config parses every key") {
    const RunConfig cfg = parse_config(
        "command=moments\n"
        "[system]\nn=2\na=-1.0,1.0\nnu=0.5\nvariant=difference\n"
        "[sim]\ndt=0.002\nhorizon=8\neps=0.02\nreplicas=777\nt_trunc=15\n"
        "[est]\nk=7\nn_permutations=99\nn_samples=321\n"
        "[run]\nout_dir=results\n");
    CHECK(cfg.a_sum() == doctest::Approx(0.0));
    CHECK(cfg.nu == 0.5);
    CHECK(cfg.variant == "difference");
    CHECK(cfg.dt == 0.002);
    CHECK(cfg.horizon == 8.0);
    CHECK(cfg.eps == 0.02);
    CHECK(cfg.replicas == 777);
    CHECK(cfg.t_trunc == 15.0);
    CHECK(cfg.k == 7);
    CHECK(cfg.n_permutations == 99);
    CHECK(cfg.n_samples == 321);
    CHECK(cfg.out_dir == "results");
}

TEST_CASE("vorticity list length must match n") {
    try {
        parse_config("command=stationarity\nn=2\na=1.0,1.0,1.0\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("3") != std::string::npos);
        CHECK(msg.find("n=2") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected with a suggestion") {
    try {
        parse_config("command=stationarity\nepsilonn=0.1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("epsilonn") != std::string::npos);
        CHECK(msg.find("eps") != std::string::npos);
    }
}

TEST_CASE("invariant violations are rejected") {
    CHECK_THROWS_AS(parse_config("command=stationarity\nnu=0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command=stationarity\n[sim]\ndt=2\nhorizon=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command=stationarity\n[sim]\neps=-1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command=nope\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command=stationarity\n[bogus]\nx=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command=stationarity\nnot a pair\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("command=stationarity\nnu=abc\n"), ConfigError);
}

TEST_CASE("missing file raises a config error") {
    CHECK_THROWS_AS(load_config("/nonexistent/vortex.cfg"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
    const RunConfig cfg = parse_config(
        "# comment\n\ncommand=radius-law\n; another\n[system]\nn=1\na=2.0\n");
    CHECK(cfg.command == "radius-law");
    CHECK(cfg.n == 1);
    CHECK(cfg.a[0] == 2.0);
}

TEST_CASE("a list alone fixes n, and n alone defaults a to ones") {
    const RunConfig from_list = parse_config("command=radius-law\na=1.0,2.0,3.0\n");
    CHECK(from_list.n == 3);
    const RunConfig from_n = parse_config("command=radius-law\nn=4\n");
    CHECK(from_n.a == std::vector<double>{1.0, 1.0, 1.0, 1.0});
}

} // TEST_SUITE
