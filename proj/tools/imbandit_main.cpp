// Command-line runner: bandit experiments, bound calculators and a synthetic
// graph generator.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "imbandit/errors.hpp"
#include "imbandit/experiment.hpp"
#include "imbandit/feedback.hpp"
#include "imbandit/metrics.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

void print6(double x) { std::printf("%.6g\n", x); }

}  // namespace

int main(int argc, char** argv) {
    using namespace imbandit;

    CLI::App app{"Influence maximization as a combinatorial multi-armed bandit"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "play bandit games and write per-round metrics as CSV");
    RunConfig cfg;
    std::string assign = "wc", algo = "eg", feedback = "el", oracle = "rr:10000", prior;
    run->add_option("--graph", cfg.graph_path, "edge list file")->required();
    run->add_option("--assign", assign, "wc | const:<p> | file")->capture_default_str();
    run->add_flag("--remap-ids", cfg.remap_ids, "densify sparse node ids");
    run->add_option("--scale", cfg.prob_scale, "multiply true probabilities by this factor");
    run->add_option("--algo", algo, "cucb | eg | ie | pe | re | se")->capture_default_str();
    run->add_option("--feedback", feedback, "el | nlf | nlml")->capture_default_str();
    run->add_option("--k", cfg.game.strategy.k, "seed budget")->required();
    run->add_option("--rounds", cfg.game.strategy.rounds, "rounds per game")->required();
    run->add_option("--omega", cfg.game.strategy.omega, "epsilon-greedy omega")->capture_default_str();
    run->add_option("--zeta", cfg.game.strategy.zeta, "initial-exploration fraction")
        ->capture_default_str();
    run->add_option("--prior", prior, "Beta prior 'alpha,beta'");
    run->add_option("--oracle", oracle, "greedy:<sims> | rr:<n>")->capture_default_str();
    run->add_option("--se-sims", cfg.game.mc_eval_sims, "value-spread worlds for strategic exploration")
        ->capture_default_str();
    run->add_option("--eta0", cfg.game.mle.eta0, "online MLE base step size")->capture_default_str();
    run->add_option("--seeds", cfg.seeds, "independent runs")->capture_default_str();
    run->add_option("--master-seed", cfg.master_seed, "master random seed")->capture_default_str();
    run->add_option("--threads", cfg.threads, "runs executed concurrently")->capture_default_str();
    run->add_option("--out", cfg.out_path, "CSV output path")->required();
    run->add_option("--estimates-out", cfg.estimates_out,
                    "write final estimates of run i to <path>.<i>.csv");
    run->add_flag("--roc", cfg.roc, "add frac_within columns for 5%..50%");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "evaluate closed-form bounds");
    bounds->require_subcommand(1);
    std::uint64_t fp_k = 1;
    double pmin = 0, pmax = 0;
    auto* fp = bounds->add_subcommand("failure-prob", "credit-assignment failure probability bound");
    fp->add_option("--k", fp_k, "active parents K")->required();
    fp->add_option("--pmin", pmin)->required();
    fp->add_option("--pmax", pmax)->required();

    double gamma = 0, eps = 0, delta = 0, pstar = 0;
    std::uint64_t nodes = 0, sc_k = 0;
    auto* sc = bounds->add_subcommand("sample-complexity", "cascades needed by random exploration");
    sc->add_option("--gamma", gamma)->required();
    sc->add_option("--nodes", nodes)->required();
    sc->add_option("--k", sc_k)->required();
    sc->add_option("--delta", delta)->required();
    sc->add_option("--eps", eps)->required();
    sc->add_option("--pstar", pstar)->required();

    double dv = 0, thetamax = 0, T = 1, G = 0;
    auto* mg = bounds->add_subcommand("mle-gap", "online vs batch MLE likelihood gap bound");
    mg->add_option("--dv", dv)->required();
    mg->add_option("--thetamax", thetamax)->required();
    mg->add_option("--T", T)->required();
    mg->add_option("--G", G)->required();
    bool average = false;
    mg->add_flag("--average", average, "divide by T");

    // gen-graph
    auto* gen = app.add_subcommand("gen-graph", "write a synthetic directed edge list");
    std::size_t gen_nodes = 100, gen_edges = 400;
    double skew = 1.0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--nodes", gen_nodes)->capture_default_str();
    gen->add_option("--edges", gen_edges)->capture_default_str();
    gen->add_option("--skew", skew, "source popularity exponent")->capture_default_str();
    gen->add_option("--seed", gen_seed)->capture_default_str();
    gen->add_option("--out", gen_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*run) {
            try {
                cfg.assign = parse_assignment(assign);
                cfg.game.strategy.kind = parse_strategy(algo);
                cfg.game.strategy.feedback = parse_feedback(feedback);
                cfg.game.oracle = parse_oracle(oracle);
                if (!prior.empty()) cfg.game.prior = parse_prior(prior);
            } catch (const ConfigError& e) {
                std::cerr << "error: " << e.what() << "\n\n" << run->help();
                return kExitUsage;
            }
            Graph g = prepare_graph(cfg);
            std::ofstream out(cfg.out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot open " << cfg.out_path << " for writing\n";
                return kExitIo;
            }
            auto games = run_experiment(g, cfg, out);
            if (!cfg.estimates_out.empty())
                for (std::size_t i = 0; i < games.size(); ++i) {
                    std::ofstream est(cfg.estimates_out + "." + std::to_string(i) + ".csv");
                    if (!est) {
                        std::cerr << "error: cannot write estimates\n";
                        return kExitIo;
                    }
                    write_estimates_csv(est, g, games[i].final_state);
                }
            return 0;
        }
        if (*fp) {
            print6(failure_prob_bound(fp_k, pmin, pmax));
        } else if (*sc) {
            std::printf("%llu\n", static_cast<unsigned long long>(
                                      sample_complexity_bound(gamma, nodes, sc_k, pstar, eps, delta)));
        } else if (*mg) {
            print6(average ? mle_average_gap_bound(dv, thetamax, T, G)
                           : mle_loss_gap_bound(dv, thetamax, T, G));
        } else if (*gen) {
            Graph g = make_random_graph(gen_nodes, gen_edges, gen_seed, skew);
            std::ofstream out(gen_out);
            if (!out) {
                std::cerr << "error: cannot open " << gen_out << " for writing\n";
                return kExitIo;
            }
            for (const auto& e : g.edges()) out << e.source << ' ' << e.target << '\n';
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NoDecayError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
