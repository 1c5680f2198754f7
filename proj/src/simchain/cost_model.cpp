#include "chainlab/simchain/cost_model.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace chainlab::simchain {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Gas parse_gas(std::string_view token, std::size_t line) {
  Gas value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || value < 0) {
    throw std::invalid_argument("cost model line " + std::to_string(line) + ": bad gas value '" +
                                std::string(token) + "'");
  }
  return value;
}

}  // namespace

CostModel::CostModel(std::map<std::string, GasRange, std::less<>> entries) : entries_(std::move(entries)) {
  for (const auto& [name, range] : entries_) {
    if (range.min > range.max) throw std::invalid_argument("cost model: min > max for " + name);
  }
}

CostModel CostModel::parse(std::string_view text) {
  std::map<std::string, GasRange, std::less<>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("cost model line " + std::to_string(line_no) + ": expected 'name = gas'");
    }
    const std::string name(trim(line.substr(0, eq)));
    std::vector<std::string_view> values;
    std::string_view rest = trim(line.substr(eq + 1));
    while (!rest.empty()) {
      const auto sp = rest.find_first_of(" \t");
      values.push_back(rest.substr(0, sp));
      rest = sp == std::string_view::npos ? std::string_view{} : trim(rest.substr(sp));
    }
    if (name.empty() || values.empty() || values.size() > 2) {
      throw std::invalid_argument("cost model line " + std::to_string(line_no) + ": expected 'name = [min] max'");
    }
    GasRange range;
    range.max = parse_gas(values.back(), line_no);
    range.min = values.size() == 2 ? parse_gas(values.front(), line_no) : range.max;
    if (!entries.emplace(name, range).second) {
      throw std::invalid_argument("cost model: duplicate entry " + name);
    }
  }
  return CostModel(std::move(entries));
}

CostModel CostModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open cost model " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

CostModel CostModel::blind_vote_reference() {
  return CostModel({
      {"constructor", {6967000, 6967000}},
      {"approve", {71000, 71000}},
      {"register", {87000, 123000}},
      {"initiate", {358000, 358000}},
      {"delegate", {79000, 79000}},
      {"blind_sign", {80000, 259000}},
      {"commit", {294000, 309000}},
      {"commit_premature", {119000, 210000}},
      {"reveal", {94000, 152000}},
      {"admin_refund", {52000, 52000}},
      {"voter_refund", {83000, 83000}},
      {"step1_refund", {86000, 86000}},
      {"step4_refund", {62000, 62000}},
      {"step5_refund", {76000, 76000}},
      {"report_refused_signature", {85000, 85000}},
      // Not measured; priced like the other report call.
      {"report", {85000, 85000}},
  });
}

CostModel CostModel::auction_call_count() {
  std::map<std::string, GasRange, std::less<>> entries;
  for (const char* fn : {"constructor", "register", "bid", "right", "blame", "fakebid", "settle",
                         "refund"}) {
    entries.emplace(fn, GasRange{1, 1});
  }
  return CostModel(std::move(entries));
}

bool CostModel::contains(std::string_view function) const { return entries_.find(function) != entries_.end(); }

const GasRange& CostModel::at(std::string_view function) const {
  auto it = entries_.find(function);
  if (it == entries_.end()) throw ChainError(Error::UnknownFunction, std::string(function));
  return it->second;
}

Gas charge(const CostModel& model, std::string_view function, ChargePolicy policy, bool first_call) {
  const GasRange& range = model.at(function);
  switch (policy) {
    case ChargePolicy::Min:
      return range.min;
    case ChargePolicy::Max:
      return range.max;
    case ChargePolicy::Midpoint:
      return range.min + (range.max - range.min) / 2;
    case ChargePolicy::ColdWarm:
      return first_call ? range.max : range.min;
  }
  return range.max;
}

Gas GasMeter::charge(const CostModel& model, std::string_view contract_kind, std::string_view function) {
  std::string key(contract_kind);
  key += '.';
  key += function;
  const bool first = seen_.insert(std::move(key)).second;
  return simchain::charge(model, function, policy_, first);
}

}  // namespace chainlab::simchain
