#include "chainlab/harness/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace chainlab::harness {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw HarnessError(HarnessError::Kind::InvalidScenario, what); }

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    invalid(std::string("field '") + key + "' has the wrong type");
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (char& c : out) {
    if (c == '_') c = '-';
  }
  return out;
}

simchain::ChargePolicy parse_charge_policy(std::string_view text) {
  const std::string t = lower(text);
  if (t == "min") return simchain::ChargePolicy::Min;
  if (t == "max") return simchain::ChargePolicy::Max;
  if (t == "midpoint") return simchain::ChargePolicy::Midpoint;
  if (t == "cold-warm") return simchain::ChargePolicy::ColdWarm;
  invalid("unknown charge policy '" + std::string(text) + "'");
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) invalid(std::string("unknown field '") + key + "' in " + where);
  }
}

simchain::ChainOptions parse_chain(const json& root, std::uint64_t seed) {
  simchain::ChainOptions options;
  options.seed = seed;
  options.gas_price = get_or<Amount>(root, "gas_price", 0);
  if (options.gas_price < 0) invalid("gas_price must be non-negative");
  if (root.contains("charge_policy")) options.charge_policy = parse_charge_policy(root["charge_policy"].get<std::string>());
  return options;
}

std::optional<simchain::CostModel> parse_costs(const json& root, const std::filesystem::path& base_dir) {
  if (!root.contains("costs")) return std::nullopt;
  const std::filesystem::path p(root["costs"].get<std::string>());
  try {
    return simchain::CostModel::load(p.is_absolute() || base_dir.empty() ? p : base_dir / p);
  } catch (const std::invalid_argument& e) {
    invalid(e.what());
  }
}

VoteScenario parse_vote(const json& v) {
  check_keys(v,
             {"voters", "votes", "n_max", "fee", "relay_reward", "admin_deposit", "deadlines", "step_blocks",
              "variant", "offchain_signing", "admin_policy", "refuse_target", "relays", "admin_key_bits",
              "voter_key_bits", "voter_funds", "admin_funds"},
             "vote");
  VoteScenario s;
  if (v.contains("voters")) {
    for (const json& e : v["voters"]) {
      check_keys(e, {"vote", "policy", "approved"}, "voter");
      VoterSpec spec;
      spec.vote = get_or<std::string>(e, "vote", "");
      spec.policy = parse_voter_policy(get_or<std::string>(e, "policy", "honest"));
      spec.approved = get_or<bool>(e, "approved", true);
      s.voters.push_back(std::move(spec));
    }
  }
  if (v.contains("votes")) {
    for (const json& e : v["votes"]) s.voters.push_back(VoterSpec{e.get<std::string>()});
  }
  std::int64_t approved = 0;
  for (const VoterSpec& spec : s.voters) approved += spec.approved ? 1 : 0;
  auto& c = s.config;
  c.n_max = get_or<std::int64_t>(v, "n_max", approved);
  c.fee = get_or<Amount>(v, "fee", 100);
  c.relay_reward = get_or<Amount>(v, "relay_reward", 10);
  c.admin_deposit = get_or<Amount>(v, "admin_deposit", 1000);
  if (v.contains("deadlines")) {
    const auto d = v["deadlines"].get<std::vector<Height>>();
    if (d.size() != 6) invalid("deadlines needs exactly six entries");
    std::copy(d.begin(), d.end(), c.deadlines.begin());
  } else {
    c.deadlines = evenly_spaced_deadlines(get_or<Height>(v, "step_blocks", 2));
  }
  const std::string variant = lower(get_or<std::string>(v, "variant", "standard"));
  if (variant == "standard") {
    c.variant = blindvote::Variant::Standard;
  } else if (variant == "premature") {
    c.variant = blindvote::Variant::Premature;
  } else {
    invalid("unknown vote variant '" + variant + "'");
  }
  c.offchain_signing = get_or<bool>(v, "offchain_signing", false);
  s.admin_policy = parse_admin_policy(get_or<std::string>(v, "admin_policy", "honest"));
  s.refuse_target = get_or<std::size_t>(v, "refuse_target", 0);
  s.relays = get_or<int>(v, "relays", 2);
  s.admin_key_bits = get_or<unsigned>(v, "admin_key_bits", 64);
  s.voter_key_bits = get_or<unsigned>(v, "voter_key_bits", 48);
  s.voter_funds = get_or<Amount>(v, "voter_funds", s.voter_funds);
  s.admin_funds = get_or<Amount>(v, "admin_funds", s.admin_funds);
  return s;
}

AuctionScenario parse_auction(const json& a) {
  check_keys(a,
             {"variant", "m", "deposit", "right_deposit", "r", "fake_count", "reward_right", "registration_blocks",
              "unit", "reveal_blocks", "verify_blocks", "bids", "bidders", "scheduler", "priority", "right_calls",
              "bidder_funds", "max_blocks"},
             "auction");
  AuctionScenario s;
  auto& c = s.config;
  try {
    c.variant = auction::parse_variant(get_or<std::string>(a, "variant", "P2"));
  } catch (const std::invalid_argument& e) {
    invalid(e.what());
  }
  c.m = get_or<std::int64_t>(a, "m", 15);
  c.deposit = get_or<Amount>(a, "deposit", 100);
  c.right_deposit = get_or<Amount>(a, "right_deposit", 10);
  c.r = get_or<int>(a, "r", 1);
  c.fake_count = get_or<int>(a, "fake_count", c.variant == auction::Variant::P3 ? 2 : 0);
  c.reward_right = get_or<Amount>(a, "reward_right", 0);
  c.registration_blocks = get_or<Height>(a, "registration_blocks", 4);
  c.unit = get_or<Height>(a, "unit", 1);
  c.reveal_blocks = get_or<Height>(a, "reveal_blocks", 2);
  c.verify_blocks = get_or<Height>(a, "verify_blocks", 2);
  if (a.contains("bids")) {
    for (const json& b : a["bids"]) s.bidders.push_back(BidderSpec{b.get<std::int64_t>()});
  }
  if (a.contains("bidders")) {
    for (const json& e : a["bidders"]) {
      check_keys(e, {"bid", "policy", "spurious_step", "spurious_strikes"}, "bidder");
      BidderSpec spec;
      spec.bid = get_or<std::int64_t>(e, "bid", 1);
      spec.policy = parse_bidder_policy(get_or<std::string>(e, "policy", "honest"));
      spec.spurious_step = get_or<int>(e, "spurious_step", 0);
      spec.spurious_strikes = get_or<int>(e, "spurious_strikes", 1);
      s.bidders.push_back(spec);
    }
  }
  const std::string scheduler = lower(get_or<std::string>(a, "scheduler", "random"));
  if (scheduler == "random") {
    s.scheduler = SchedulerKind::Random;
  } else if (scheduler == "scripted") {
    s.scheduler = SchedulerKind::Scripted;
  } else {
    invalid("unknown scheduler '" + scheduler + "'");
  }
  for (std::size_t p : get_or<std::vector<std::size_t>>(a, "priority", {})) {
    if (p == 0) invalid("priority lists 1-based bidder numbers");
    s.priority.push_back(p - 1);
  }
  const std::string calls = lower(get_or<std::string>(a, "right_calls", "random"));
  if (calls == "random") {
    s.call_count = CallCount::Random;
  } else if (calls == "fixed") {
    s.call_count = CallCount::Fixed;
  } else {
    invalid("unknown right_calls policy '" + calls + "'");
  }
  s.bidder_funds = get_or<Amount>(a, "bidder_funds", s.bidder_funds);
  s.max_blocks = get_or<Height>(a, "max_blocks", s.max_blocks);
  return s;
}

}  // namespace

void Scenario::set_seed(std::uint64_t seed) {
  vote.chain.seed = seed;
  auction.chain.seed = seed;
}

std::array<Height, 6> evenly_spaced_deadlines(Height step_blocks) {
  std::array<Height, 6> d{};
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = static_cast<Height>(j + 1) * step_blocks;
  return d;
}

Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed scenario: ") + e.what());
  }
  if (!root.is_object()) invalid("scenario must be a JSON object");
  Scenario s;
  try {
    check_keys(root, {"name", "protocol", "seed", "gas_price", "charge_policy", "costs", "vote", "auction"},
               "scenario");
    s.name = get_or<std::string>(root, "name", "");
    const std::string protocol = lower(get_or<std::string>(root, "protocol", ""));
    const auto seed = get_or<std::uint64_t>(root, "seed", 0);
    auto costs = parse_costs(root, base_dir);
    if (protocol == "blindvote") {
      s.protocol = Scenario::Protocol::BlindVote;
      s.vote = parse_vote(root.value("vote", json::object()));
      s.vote.chain = parse_chain(root, seed);
      if (costs) s.vote.costs = *costs;
    } else if (protocol == "auction") {
      s.protocol = Scenario::Protocol::Auction;
      s.auction = parse_auction(root.value("auction", json::object()));
      s.auction.chain = parse_chain(root, seed);
      if (costs) s.auction.costs = *costs;
    } else {
      invalid("protocol must be 'blindvote' or 'auction'");
    }
  } catch (const json::exception& e) {
    invalid(std::string("bad scenario field: ") + e.what());
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open scenario " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Scenario s = parse_scenario(buffer.str(), path.parent_path());
  if (s.name.empty()) s.name = path.stem().string();
  return s;
}

void validate(const Scenario& s) {
  try {
    if (s.protocol == Scenario::Protocol::BlindVote) {
      const VoteScenario& v = s.vote;
      blindvote::validate(v.config);
      if (v.voters.empty()) invalid("vote scenario has no voters");
      if (v.relays < 1) invalid("need at least one relay");
      if (v.admin_key_bits < 16 || v.voter_key_bits < 16) invalid("key sizes below 16 bits");
      if (v.admin_policy == AdminPolicy::RefuseSign &&
          (v.refuse_target >= v.voters.size() || !v.voters[v.refuse_target].approved)) {
        invalid("refuse_target must name an approved voter");
      }
      for (const VoterSpec& spec : v.voters) {
        if (spec.policy == VoterPolicy::DoubleDemand && !v.config.offchain_signing) {
          invalid("double-demand needs offchain_signing");
        }
      }
      if (!v.costs.contains("constructor")) invalid("cost model lacks a constructor entry");
    } else {
      const AuctionScenario& a = s.auction;
      auction::validate(a.config);
      if (a.bidders.empty()) invalid("auction scenario has no bidders");
      for (const BidderSpec& b : a.bidders) {
        if (b.bid < 1 || b.bid > a.config.m) invalid("bid " + std::to_string(b.bid) + " outside [1, m]");
        if (b.spurious_strikes < 0 || b.spurious_step < 0) invalid("negative spurious script");
      }
      for (std::size_t p : a.priority) {
        if (p >= a.bidders.size()) invalid("priority names an unknown bidder");
      }
      if (!a.costs.contains("constructor")) invalid("cost model lacks a constructor entry");
    }
  } catch (const simchain::ChainError& e) {
    invalid(std::string("invalid config: ") + e.what());
  }
}

std::vector<std::int64_t> parse_bid_list(std::string_view text) {
  std::vector<std::int64_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view token = text.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      invalid("bad bid list entry '" + std::string(token) + "'");
    }
    out.push_back(value);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  if (out.empty()) invalid("empty bid list");
  return out;
}

VoterPolicy parse_voter_policy(std::string_view text) {
  const std::string t = lower(text);
  if (t == "honest") return VoterPolicy::Honest;
  if (t == "silent") return VoterPolicy::Silent;
  if (t == "no-reveal") return VoterPolicy::NoReveal;
  if (t == "double-demand") return VoterPolicy::DoubleDemand;
  invalid("unknown voter policy '" + std::string(text) + "'");
}

AdminPolicy parse_admin_policy(std::string_view text) {
  const std::string t = lower(text);
  if (t == "honest") return AdminPolicy::Honest;
  if (t == "refuse-sign") return AdminPolicy::RefuseSign;
  if (t == "over-sign") return AdminPolicy::OverSign;
  invalid("unknown admin policy '" + std::string(text) + "'");
}

BidderPolicy parse_bidder_policy(std::string_view text) {
  const std::string t = lower(text);
  if (t == "honest") return BidderPolicy::Honest;
  if (t == "silent") return BidderPolicy::Silent;
  if (t == "spurious-right") return BidderPolicy::SpuriousRight;
  if (t == "no-reveal") return BidderPolicy::NoReveal;
  invalid("unknown bidder policy '" + std::string(text) + "'");
}

std::string_view to_string(VoterPolicy p) {
  switch (p) {
    case VoterPolicy::Honest:
      return "honest";
    case VoterPolicy::Silent:
      return "silent";
    case VoterPolicy::NoReveal:
      return "no-reveal";
    case VoterPolicy::DoubleDemand:
      return "double-demand";
  }
  return "?";
}

std::string_view to_string(AdminPolicy p) {
  switch (p) {
    case AdminPolicy::Honest:
      return "honest";
    case AdminPolicy::RefuseSign:
      return "refuse-sign";
    case AdminPolicy::OverSign:
      return "over-sign";
  }
  return "?";
}

std::string_view to_string(BidderPolicy p) {
  switch (p) {
    case BidderPolicy::Honest:
      return "honest";
    case BidderPolicy::Silent:
      return "silent";
    case BidderPolicy::SpuriousRight:
      return "spurious-right";
    case BidderPolicy::NoReveal:
      return "no-reveal";
  }
  return "?";
}

}  // namespace chainlab::harness
