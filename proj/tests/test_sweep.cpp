#include "pulseshare/errors.hpp"
#include "pulseshare/fit.hpp"
#include "pulseshare/serialize.hpp"
#include "pulseshare/sweep.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pulseshare;

namespace {

SweepConfig small_config(Model model, GateKind gate) {
    SweepConfig cfg;
    cfg.model = model;
    cfg.gate = gate;
    cfg.n_list = {2, 4};
    cfg.nbar_list = {1e3, 1e4};
    return cfg;
}

SweepRecord synthetic(int n, double nbar, double infid) {
    SweepRecord r;
    r.model = "phase";
    r.gate = "pi";
    r.n_atoms = n;
    r.nbar = nbar;
    r.infidelity_sim = infid;
    return r;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("pulseshare_test_" + name);
}

}  // namespace

TEST_CASE("config parsing") {
    const SweepConfig cfg = parse_sweep_config(R"(
# phase-model pi sweep
model = phase
gate = pi_half      # trailing comment
n_list = 1, 2,3
nbar_list = 1e3,2.5e4
delta = 0.25
cutoff = 40000
output = out.json
format = json
record_runtime = yes
)");
    CHECK(cfg.model == Model::phase);
    CHECK(cfg.gate == GateKind::pi_half);
    CHECK(cfg.n_list == std::vector<int>{1, 2, 3});
    CHECK(cfg.nbar_list == std::vector<double>{1e3, 2.5e4});
    CHECK(cfg.delta == 0.25);
    CHECK(cfg.cutoff_override == 40000);
    CHECK(cfg.output_path == "out.json");
    CHECK(cfg.format == OutputFormat::json);
    CHECK(cfg.record_runtime);

    const SweepConfig defaults = parse_sweep_config("n_list = 1\nnbar_list = 100\n");
    CHECK(defaults.model == Model::phase);
    CHECK(defaults.gate == GateKind::pi);
    CHECK(!defaults.cutoff_override);
    CHECK(defaults.format == OutputFormat::csv);
    CHECK(!defaults.record_runtime);
}

TEST_CASE("config validation") {
    const auto bad = [](const char* text) { CHECK_THROWS_AS(parse_sweep_config(text), ConfigError); };
    bad("nbar_list = 100\n");
    bad("n_list = 1\n");
    bad("n_list = 1\nnbar_list = 100\nmodel = qed\n");
    bad("n_list = 1\nnbar_list = 100\ngate = pi/2\n");
    bad("n_list = 1\nnbar_list = 100\nformat = xml\n");
    bad("n_list = 1\nnbar_list = 100\ncolour = blue\n");
    bad("n_list = 1\nnbar_list = 100\nthis line has no equals\n");
    bad("n_list = 1,,2\nnbar_list = 100\n");
    bad("n_list = 0\nnbar_list = 100\n");
    bad("n_list = 13\nnbar_list = 100\n");
    bad("n_list = 1\nnbar_list = -5\n");
    bad("n_list = 1\nnbar_list = 100x\n");
    bad("model = tc\nn_list = 1\nnbar_list = 5000\n");
    bad("model = tc\nn_list = 1\nnbar_list = 8\n");
    bad("model = encoded\ngate = pi_half\nn_list = 1\nnbar_list = 100\n");
    bad("n_list = 1\nnbar_list = 100\ncutoff = 0\n");
    bad("n_list = 1\nnbar_list = 100\nrecord_runtime = maybe\n");
    CHECK_THROWS_AS(load_sweep_config("/nonexistent/sweep.cfg"), ConfigError);
}

TEST_CASE("sweeps") {
    SUBCASE("grid order is N-major") {
        const auto records = run_sweep(small_config(Model::phase, GateKind::pi), 2);
        REQUIRE(records.size() == 4);
        CHECK(records[0].n_atoms == 2);
        CHECK(records[0].nbar == 1e3);
        CHECK(records[1].n_atoms == 2);
        CHECK(records[1].nbar == 1e4);
        CHECK(records[2].n_atoms == 4);
        CHECK(records[3].nbar == 1e4);
        for (const auto& r : records) {
            CHECK(r.model == "phase");
            CHECK(r.gate == "pi");
            CHECK(r.runtime_ms == 0.0);
        }
        CHECK(std::abs(records[1].infidelity_sim / records[1].bound_eq13 - 1.0) <= 0.05);
    }
    SUBCASE("pi/2 records sit above the general bound") {
        for (const auto& r : run_sweep(small_config(Model::phase, GateKind::pi_half), 1))
            CHECK(r.infidelity_sim >= r.bound_eq8);
    }
    SUBCASE("encoded and tc models") {
        const auto enc = run_sweep(small_config(Model::encoded, GateKind::pi), 1);
        CHECK(enc[0].cutoff == 0);
        CHECK(enc[0].infidelity_sim > 0.0);
        SweepConfig tc = small_config(Model::tc, GateKind::pi);
        tc.n_list = {1, 2};
        tc.nbar_list = {100.0};
        const auto recs = run_sweep(tc, 2);
        REQUIRE(recs.size() == 2);
        CHECK(recs[1].infidelity_sim > 0.0);
        CHECK(recs[1].cutoff == default_cutoff(100.0));
    }
    SUBCASE("runtime is recorded on request") {
        SweepConfig cfg = small_config(Model::phase, GateKind::pi);
        cfg.record_runtime = true;
        CHECK(run_sweep(cfg, 1)[3].runtime_ms > 0.0);
    }
    SUBCASE("worker count does not change the output") {
        SweepConfig cfg = small_config(Model::phase, GateKind::pi_half);
        cfg.n_list = {1, 2, 3, 4, 5};
        const std::string ref = records_to_csv(run_sweep(cfg, 1));
        for (unsigned w : {2u, 3u, 7u, 64u}) CHECK(records_to_csv(run_sweep(cfg, w)) == ref);
        CHECK(records_to_csv(run_sweep(cfg, 1)) == ref);
    }
    SUBCASE("errors carry the grid point") {
        SweepConfig cfg = small_config(Model::phase, GateKind::pi);
        cfg.n_list = {1};
        cfg.nbar_list = {1e4, 5.0};
        try {
            run_sweep(cfg, 2);
            FAIL("expected a numerical guard error");
        } catch (const NumericalGuardError& e) {
            CHECK(std::string(e.what()).find("nbar=5") != std::string::npos);
        }
    }
}

TEST_CASE("worker count from the environment") {
    ::setenv("PULSESHARE_MAX_WORKERS", "3", 1);
    CHECK(default_worker_count() == 3);
    ::setenv("PULSESHARE_MAX_WORKERS", "0", 1);
    CHECK_THROWS_AS(default_worker_count(), ConfigError);
    ::setenv("PULSESHARE_MAX_WORKERS", "two", 1);
    CHECK_THROWS_AS(default_worker_count(), ConfigError);
    ::unsetenv("PULSESHARE_MAX_WORKERS");
    CHECK(default_worker_count() >= 1);
}

TEST_CASE("exponent fits") {
    SUBCASE("exact power law in N") {
        std::vector<SweepRecord> recs;
        for (int n : {1, 2, 3, 5, 8}) recs.push_back(synthetic(n, 1e4, 0.37 * n * n));
        const FitResult f = fit_exponent(recs, FitAxis::n_atoms);
        CHECK(std::abs(f.exponent - 2.0) <= 1e-9);
        CHECK(std::abs(f.intercept - std::log(0.37)) <= 1e-9);
        CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.axis == FitAxis::n_atoms);
    }
    SUBCASE("exact power law in nbar") {
        std::vector<SweepRecord> recs;
        for (double nbar : {1e2, 1e3, 1e4, 1e5}) recs.push_back(synthetic(2, nbar, 5.0 / nbar));
        CHECK(std::abs(fit_exponent(recs, FitAxis::nbar).exponent + 1.0) <= 1e-9);
    }
    SUBCASE("noisy data has r^2 below one") {
        std::vector<SweepRecord> recs;
        for (int n : {1, 2, 3, 4}) recs.push_back(synthetic(n, 1e4, n * n * (n % 2 ? 1.3 : 0.8)));
        const FitResult f = fit_exponent(recs, FitAxis::n_atoms);
        CHECK(f.r_squared > 0.0);
        CHECK(f.r_squared < 1.0);
    }
    SUBCASE("simulated phase-model exponents") {
        SweepConfig by_n = small_config(Model::phase, GateKind::pi);
        by_n.n_list = {2, 3, 4, 6, 8};
        by_n.nbar_list = {1e6};
        CHECK(std::abs(fit_exponent(run_sweep(by_n, 2), FitAxis::n_atoms).exponent - 2.0) <= 0.05);
        SweepConfig by_nbar = by_n;
        by_nbar.n_list = {4};
        by_nbar.nbar_list = {1e4, 1e5, 1e6};
        CHECK(std::abs(fit_exponent(run_sweep(by_nbar, 2), FitAxis::nbar).exponent + 1.0) <= 0.05);
    }
    SUBCASE("invalid inputs") {
        std::vector<SweepRecord> two{synthetic(1, 10.0, 0.1), synthetic(2, 10.0, 0.4)};
        CHECK_THROWS_AS(fit_exponent(two, FitAxis::n_atoms), ConfigError);
        std::vector<SweepRecord> mixed{synthetic(1, 10.0, 0.1), synthetic(2, 20.0, 0.4), synthetic(3, 10.0, 0.9)};
        CHECK_THROWS_AS(fit_exponent(mixed, FitAxis::n_atoms), ConfigError);
        std::vector<SweepRecord> zero{synthetic(1, 10.0, 0.1), synthetic(2, 10.0, 0.0), synthetic(3, 10.0, 0.9)};
        CHECK_THROWS_AS(fit_exponent(zero, FitAxis::n_atoms), ConfigError);
        CHECK_THROWS_AS(parse_fit_axis("n"), ConfigError);
        CHECK(parse_fit_axis("N") == FitAxis::n_atoms);
        CHECK(parse_fit_axis("nbar") == FitAxis::nbar);
    }
}

TEST_CASE("serialization") {
    SUBCASE("empty CSV is the header") {
        CHECK(records_to_csv({}) == std::string(kRecordCsvHeader) + "\n");
        CHECK(kRecordCsvHeader ==
              "model,gate,N,nbar,cutoff,infidelity_sim,bound_eq8,bound_eq12,bound_eq13,bitflip_exact_eq15,runtime_ms,leakage");
    }
    SUBCASE("four records make five lines") {
        const std::string csv = records_to_csv(run_sweep(small_config(Model::phase, GateKind::pi), 1));
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
        const std::string second = csv.substr(csv.find('\n') + 1, csv.find('\n', csv.find('\n') + 1) - csv.find('\n') - 1);
        CHECK(second.rfind("phase,pi,2,1.0000000000000000e+03,", 0) == 0);
    }
    SUBCASE("reals keep every digit") {
        CHECK(format_real(0.1) == "1.0000000000000001e-01");
        CHECK(format_real(0.0) == "0.0000000000000000e+00");
        for (double v : {1.0 / 3.0, 6.02214076e23, 2.5e-300, -7.25}) CHECK(std::stod(format_real(v)) == v);
    }
    SUBCASE("JSON round trip is exact") {
        SweepConfig cfg = small_config(Model::phase, GateKind::pi_half);
        cfg.record_runtime = true;
        const auto records = run_sweep(cfg, 1);
        const auto back = records_from_json(records_to_json(records));
        CHECK(back == records);
        const auto j = nlohmann::json::parse(records_to_json(records));
        REQUIRE(j.is_array());
        for (const char* key : {"model", "gate", "N", "nbar", "cutoff", "infidelity_sim", "bound_eq8", "bound_eq12",
                                "bound_eq13", "bitflip_exact_eq15", "runtime_ms", "leakage"})
            CHECK(j[0].contains(key));
    }
    SUBCASE("invalid records are not written") {
        std::vector<SweepRecord> recs{synthetic(1, 10.0, 1.5)};
        CHECK_THROWS_AS(format_records(recs, OutputFormat::csv), NumericalGuardError);
        recs[0].infidelity_sim = 0.1;
        recs[0].leakage = 1e-8;
        CHECK_THROWS_AS(format_records(recs, OutputFormat::json), NumericalGuardError);
    }
    SUBCASE("emit writes files") {
        const auto records = run_sweep(small_config(Model::encoded, GateKind::pi), 1);
        const auto csv_path = temp_path("records.csv");
        emit(records, OutputFormat::csv, csv_path);
        CHECK(read_file(csv_path) == records_to_csv(records));
        const auto report_path = temp_path("report.json");
        emit(bound_report(2, 100.0), report_path);
        CHECK(nlohmann::json::parse(read_file(report_path)).at("n2sq").get<double>() == doctest::Approx(10402.0));
        const auto fit_path = temp_path("fit.csv");
        FitResult fit;
        fit.exponent = 2.0;
        emit(fit, OutputFormat::csv, fit_path);
        CHECK(read_file(fit_path).rfind("exponent,intercept,r_squared,axis\n", 0) == 0);
        std::filesystem::remove(csv_path);
        std::filesystem::remove(report_path);
        std::filesystem::remove(fit_path);
        CHECK_THROWS_AS(emit(records, OutputFormat::csv, "/nonexistent/dir/out.csv"), std::runtime_error);
    }
}
