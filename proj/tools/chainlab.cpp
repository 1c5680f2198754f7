#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chainlab/harness/checks.hpp"
#include "chainlab/harness/od_check.hpp"
#include "chainlab/harness/report.hpp"
#include "chainlab/harness/sweep.hpp"

namespace h = chainlab::harness;

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kInvalid = 2;

std::optional<std::uint64_t> env_seed() {
  const char* text = std::getenv("SEED");
  if (!text || !*text) return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != std::string(text).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw h::HarnessError(h::HarnessError::Kind::InvalidScenario, std::string("bad SEED '") + text + "'");
  }
}

void apply_seed(h::Scenario& s, const std::optional<std::uint64_t>& flag) {
  if (flag) {
    s.set_seed(*flag);
  } else if (auto e = env_seed()) {
    s.set_seed(*e);
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw h::HarnessError(h::HarnessError::Kind::InvalidScenario, "cannot write " + path);
  out << text;
}

int report_violations(const std::vector<std::string>& violations) {
  for (const std::string& v : violations) std::cout << "FAIL " << v << '\n';
  std::cout << (violations.empty() ? "all checks passed" : "property violation") << '\n';
  return violations.empty() ? kPass : kViolation;
}

int cmd_run(const std::string& file, const std::optional<std::uint64_t>& seed, const std::string& report,
            const std::string& log) {
  h::Scenario s = h::load_scenario(file);
  apply_seed(s, seed);
  std::cout << "scenario " << s.name << " seed " << s.seed() << '\n';
  if (s.protocol == h::Scenario::Protocol::BlindVote) {
    const h::VoteRun run = h::run_vote(s.vote);
    const auto rows = h::gas_rows(*run.chain, run.parties);
    std::cout << h::gas_csv(rows) << h::balances_csv(run.parties) << h::penalties_csv(run.penalties);
    for (const auto& [vote, count] : run.contract().tally()) std::cout << "tally " << vote << ' ' << count << '\n';
    if (!report.empty()) write_file(report, h::gas_csv(rows));
    if (!log.empty()) write_file(log, h::serialize_log(*run.chain));
    return report_violations(h::check_vote(s.vote, run));
  }
  const h::AuctionRun run = h::run_auction(s.auction);
  const std::string csv = h::auction_csv({h::summarize(run)});
  std::cout << csv << h::balances_csv(run.parties) << h::penalties_csv(run.penalties);
  if (!report.empty()) write_file(report, csv);
  if (!log.empty()) write_file(log, h::serialize_log(*run.chain));
  return report_violations(h::check_auction(s.auction, run));
}

int cmd_od(const std::string& file, const std::string& bids_a, const std::string& bids_b, const std::string& observer,
           const std::optional<std::uint64_t>& seed, bool show) {
  h::Scenario s = h::load_scenario(file);
  apply_seed(s, seed);
  if (s.protocol != h::Scenario::Protocol::Auction) {
    throw h::HarnessError(h::HarnessError::Kind::InvalidScenario, "od-check needs an auction scenario");
  }
  const auto verdict = h::check_observational_determinism(s.auction, h::parse_bid_list(bids_a),
                                                          h::parse_bid_list(bids_b), h::ObserverSpec::parse(observer));
  if (show) std::cout << h::to_text(verdict.trace_a) << h::to_text(verdict.trace_b);
  std::cout << "observer " << verdict.trace_a.observer << ": " << verdict.describe() << '\n';
  return verdict.equal ? kPass : kViolation;
}

int cmd_sweep(const std::string& param, std::int64_t step, const std::string& protocol, const std::string& file,
              const std::string& out, const std::optional<std::uint64_t>& seed) {
  const h::SweepRange range = h::SweepRange::parse(param, step);
  std::string csv;
  std::string proto = protocol;
  std::optional<h::Scenario> base;
  if (!file.empty()) {
    base = h::load_scenario(file);
    apply_seed(*base, seed);
    proto = base->protocol == h::Scenario::Protocol::BlindVote ? "blindvote" : "auction";
  }
  if (proto.empty()) proto = range.param == "m" ? "auction" : "blindvote";
  std::uint64_t fallback_seed = 1;
  if (seed) {
    fallback_seed = *seed;
  } else if (auto e = env_seed()) {
    fallback_seed = *e;
  }
  if (proto == "blindvote") {
    h::VoteScenario v = base ? base->vote : h::honest_vote(1, fallback_seed);
    csv = h::sweep_vote_csv(range, v);
  } else if (proto == "auction") {
    h::AuctionScenario a = base ? base->auction : h::random_auction(chainlab::auction::Variant::P2, 8, 64, fallback_seed);
    csv = h::sweep_auction_csv(range, a);
  } else {
    throw h::HarnessError(h::HarnessError::Kind::InvalidScenario, "unknown protocol '" + proto + "'");
  }
  if (out.empty()) {
    std::cout << csv;
  } else {
    write_file(out, csv);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated blockchain lab for privacy-preserving voting and auctions"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Run a scenario file and check its properties");
  std::string run_file, run_report, run_log;
  run->add_option("scenario", run_file)->required();
  run->add_option("--seed", seed, "Overrides the scenario seed and SEED");
  run->add_option("--report", run_report, "CSV report path");
  run->add_option("--log", run_log, "Full transaction log path");

  auto* od = app.add_subcommand("od-check", "Compare observer traces for two compatible bid sequences");
  std::string od_file, od_a, od_b, od_observer = "outside";
  bool od_show = false;
  od->add_option("scenario", od_file)->required();
  od->add_option("bids-A", od_a)->required();
  od->add_option("bids-B", od_b)->required();
  od->add_option("--observer", od_observer, "outside, or a 1-based bidder number");
  od->add_option("--seed", seed);
  od->add_flag("--show", od_show, "Print both traces");

  auto* sweep = app.add_subcommand("sweep", "Emit plot data over a parameter range");
  std::string sw_param, sw_protocol, sw_file, sw_out;
  std::int64_t sw_step = 1;
  sweep->add_option("--param", sw_param, "name=from..to")->required();
  sweep->add_option("--step", sw_step);
  sweep->add_option("--protocol", sw_protocol, "blindvote or auction");
  sweep->add_option("--scenario", sw_file, "Base scenario");
  sweep->add_option("--out", sw_out, "CSV path (default stdout)");
  sweep->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInvalid;
  }

  try {
    if (*run) return cmd_run(run_file, seed, run_report, run_log);
    if (*od) return cmd_od(od_file, od_a, od_b, od_observer, seed, od_show);
    if (*sweep) return cmd_sweep(sw_param, sw_step, sw_protocol, sw_file, sw_out, seed);
  } catch (const h::HarnessError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
