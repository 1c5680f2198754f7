#include "chainlab/harness/trace.hpp"

#include <map>
#include <sstream>

namespace chainlab::harness {

ObservationTrace observe(const simchain::Chain& chain, const std::set<simchain::IdentityId>& own,
                         std::string observer, std::optional<simchain::IdentityId> contract) {
  ObservationTrace trace{std::move(observer), {}};
  for (const simchain::Transaction& tx : chain.state().log) {
    if (contract && tx.contract != *contract) continue;
    trace.events.push_back(TraceEvent{tx.block, tx.call.function, tx.valid(), "id:" + std::to_string(tx.sender.value),
                                      own.count(tx.sender) != 0});
  }
  return trace;
}

std::set<simchain::IdentityId> identities_of(const simchain::Chain& chain, simchain::PrincipalId principal) {
  std::set<simchain::IdentityId> out;
  for (const simchain::Identity& id : chain.identities()) {
    if (id.owner && *id.owner == principal) out.insert(id.id);
  }
  return out;
}

ObservationTrace canonicalize(const ObservationTrace& trace) {
  ObservationTrace out{trace.observer, {}};
  std::map<std::string, std::string> labels;
  for (TraceEvent e : trace.events) {
    auto [it, inserted] = labels.try_emplace(e.sender, "#" + std::to_string(labels.size() + 1));
    e.sender = it->second;
    out.events.push_back(std::move(e));
  }
  return out;
}

std::optional<std::size_t> first_divergence(const ObservationTrace& a, const ObservationTrace& b) {
  const std::size_t n = std::min(a.events.size(), b.events.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a.events[i] == b.events[i])) return i;
  }
  if (a.events.size() != b.events.size()) return n;
  return std::nullopt;
}

std::string to_text(const TraceEvent& e) {
  std::ostringstream os;
  os << e.block << ' ' << e.function << ' ' << (e.valid ? "valid" : "invalid") << ' ' << e.sender
     << (e.own ? " self" : "");
  return os.str();
}

std::string to_text(const ObservationTrace& trace) {
  std::string out = "observer " + trace.observer + "\n";
  for (const TraceEvent& e : trace.events) out += to_text(e) + "\n";
  return out;
}

std::string serialize_log(const simchain::Chain& chain) {
  std::ostringstream os;
  for (const simchain::Transaction& tx : chain.state().log) {
    os << tx.seq << ' ' << tx.block << ' ' << tx.sender.value << ' ' << tx.contract.value << ' ' << tx.call.function
       << '(';
    for (std::size_t i = 0; i < tx.call.args.size(); ++i) {
      os << (i ? "," : "") << simchain::describe(tx.call.args[i]);
    }
    os << ") value=" << tx.attached_value << ' ' << simchain::to_string(tx.status);
    if (tx.error) os << ' ' << simchain::to_string(*tx.error);
    if (!tx.note.empty()) os << " [" << tx.note << ']';
    os << " gas=" << tx.gas << " fee=" << tx.fee << '\n';
  }
  return os.str();
}

}  // namespace chainlab::harness
