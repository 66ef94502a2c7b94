// rate-assure: scenario runner, attack suite, microbenchmarks, and
// size/storage reports for the rate-assuring proof protocol.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

#include "rateassure/harness.hpp"

using nlohmann::json;
using namespace rateassure;

namespace {

json to_json(const harness::ScenarioReport& rep) {
    json j;
    j["name"] = rep.name;
    j["steps"] = rep.steps;
    j["detected"] = rep.detected;
    j["passed"] = rep.passed();
    json asserts = json::array();
    for (const auto& [what, ok] : rep.assertions)
        asserts.push_back({{"check", what}, {"ok", ok}});
    j["assertions"] = asserts;
    return j;
}

json to_json(const harness::BenchReport& rep) {
    return json{{"operation", rep.operation},
                {"iterations", rep.iterations},
                {"rl_size", rep.rl_size},
                {"mean_ms", rep.mean_ms},
                {"median_ms", rep.median_ms},
                {"p95_ms", rep.p95_ms}};
}

json to_json(const harness::SizeReport& rep) {
    return json{{"sigma_bytes", rep.sigma_bytes},
                {"t_start_bytes", rep.t_start_bytes},
                {"signer_entries", rep.signer_entries},
                {"signer_log_bytes", rep.signer_log_bytes},
                {"verifier_entries", rep.verifier_entries},
                {"verifier_log_bytes", rep.verifier_log_bytes}};
}

void print_report(const harness::ScenarioReport& rep) {
    std::cout << "scenario: " << rep.name << "\n";
    for (const auto& s : rep.steps) std::cout << "  step: " << s << "\n";
    for (const auto& [what, ok] : rep.assertions)
        std::cout << "  " << (ok ? "ok  " : "FAIL") << "  " << what << "\n";
    std::cout << "  detection: " << (rep.detected ? "true" : "false") << "\n"
              << "  result: " << (rep.passed() ? "PASS" : "FAIL") << "\n";
}

void print_report(const harness::BenchReport& rep) {
    std::cout << std::fixed << std::setprecision(2) << rep.operation
              << "  iters=" << rep.iterations << " rl=" << rep.rl_size
              << "  mean=" << rep.mean_ms << "ms median=" << rep.median_ms
              << "ms p95=" << rep.p95_ms << "ms\n";
}

void write_json(const std::string& path, const json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rate-assuring proof protocol simulator"};
    app.require_subcommand(1);

    std::string json_path;
    app.add_option("--json", json_path, "write a structured report here");

    uint64_t seed = 42;
    size_t signers = 1, windows = 1;

    auto* sc = app.add_subcommand("scenario", "run an honest scenario");
    std::string scenario_name = "honest";
    sc->add_option("name", scenario_name, "scenario name (honest)");
    sc->add_option("--seed", seed);
    sc->add_option("--signers", signers);
    sc->add_option("--windows", windows);

    auto* at = app.add_subcommand("attack", "run one attack scenario");
    std::string attack_name;
    at->add_option("kind", attack_name, "attack kind (or 'all')")->required();
    at->add_option("--seed", seed);

    auto* be = app.add_subcommand("bench", "microbenchmark an operation");
    std::string bench_op;
    size_t iters = 20, rl_size = 0;
    be->add_option("op", bench_op, "sign | verify | verify_with_rl")
        ->required();
    be->add_option("--iters", iters);
    be->add_option("--rl-size", rl_size);

    auto* sz = app.add_subcommand("sizes", "measure artifact sizes");
    size_t signer_entries = 1000, verifier_entries = 100000;
    sz->add_option("--signer-entries", signer_entries);
    sz->add_option("--verifier-entries", verifier_entries);
    sz->add_option("--seed", seed);

    auto* kg = app.add_subcommand("keygen", "generate a GM key pair");
    std::string gm_id, out_path;
    kg->add_option("--gm", gm_id, "GM identity (domain name)")->required();
    kg->add_option("--out", out_path, "output path prefix")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sc) {
            if (scenario_name != "honest") {
                std::cerr << "unknown scenario: " << scenario_name << "\n";
                return 2;
            }
            auto rep = harness::run_honest(signers, windows, 1, seed);
            print_report(rep);
            write_json(json_path, to_json(rep));
            return rep.passed() ? 0 : 1;
        }
        if (*at) {
            json all = json::array();
            bool ok = true;
            if (attack_name == "all") {
                for (const auto& [kind, name] : harness::attack_catalog()) {
                    auto rep = harness::run_attack(kind, seed);
                    print_report(rep);
                    all.push_back(to_json(rep));
                    ok = ok && rep.passed();
                }
                write_json(json_path, all);
                return ok ? 0 : 1;
            }
            auto kind = harness::attack_from_string(attack_name);
            if (!kind) {
                std::cerr << "unknown attack kind: " << attack_name << "\n";
                return 2;
            }
            auto rep = harness::run_attack(*kind, seed);
            print_report(rep);
            write_json(json_path, to_json(rep));
            return rep.passed() ? 0 : 1;
        }
        if (*be) {
            SystemRng rng;
            if (iters < 20) {
                std::cerr << "need at least 20 iterations\n";
                return 2;
            }
            if (bench_op == "sign") {
                auto rep = harness::bench_sign(iters, rng);
                print_report(rep);
                write_json(json_path, to_json(rep));
            } else if (bench_op == "verify") {
                auto rep = harness::bench_verify(iters, 0, rng);
                print_report(rep);
                write_json(json_path, to_json(rep));
            } else if (bench_op == "verify_with_rl") {
                json reps = json::array();
                for (size_t n : {size_t{0}, size_t{10}, size_t{25},
                                 rl_size ? rl_size : size_t{50}}) {
                    auto rep = harness::bench_verify(iters, n, rng);
                    print_report(rep);
                    reps.push_back(to_json(rep));
                }
                write_json(json_path, reps);
            } else {
                std::cerr << "unknown bench op: " << bench_op << "\n";
                return 2;
            }
            return 0;
        }
        if (*sz) {
            auto rep =
                harness::report_sizes(signer_entries, verifier_entries, seed);
            std::cout << "sigma bytes:        " << rep.sigma_bytes << "\n"
                      << "t start field:      " << rep.t_start_bytes << "\n"
                      << "signer log bytes:   " << rep.signer_log_bytes
                      << " (" << rep.signer_entries << " entries)\n"
                      << "verifier log bytes: " << rep.verifier_log_bytes
                      << " (" << rep.verifier_entries << " entries)\n";
            write_json(json_path, to_json(rep));
            return 0;
        }
        if (*kg) {
            SystemRng rng;
            auto [gpk, gsk] = daa::setup(rng);
            std::ofstream pub(out_path + ".gpk", std::ios::binary);
            Bytes gpkb = gpk.serialize();
            pub.write(reinterpret_cast<const char*>(gpkb.data()),
                      gpkb.size());
            std::ofstream sec(out_path + ".gsk", std::ios::binary);
            Bytes gskb = gsk.x.serialize();
            append(gskb, gsk.y.serialize());
            sec.write(reinterpret_cast<const char*>(gskb.data()),
                      gskb.size());
            std::cout << "gm " << gm_id << ": wrote " << out_path << ".gpk ("
                      << gpkb.size() << " bytes) and " << out_path
                      << ".gsk\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
