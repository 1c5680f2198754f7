#include "chainlab/simchain/chain.hpp"

#include <algorithm>
#include <sstream>

namespace chainlab::simchain {

std::string_view to_string(TxStatus status) {
  switch (status) {
    case TxStatus::Pending:
      return "pending";
    case TxStatus::Accepted:
      return "accepted";
    case TxStatus::Rejected:
      return "rejected";
    case TxStatus::Penalized:
      return "penalized";
  }
  return "unknown";
}

std::string describe(const Arg& arg) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const crypto::BigInt& v) const { return crypto::to_decimal(v); }
    std::string operator()(const crypto::Digest& v) const { return crypto::to_hex(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(IdentityId v) const { return "id:" + std::to_string(v.value); }
  };
  return std::visit(Visitor{}, arg);
}

CallContext::CallContext(const Chain& chain, const Transaction& tx, Amount contract_balance)
    : chain_(chain), tx_(tx), balance_(contract_balance) {}

void CallContext::pay(IdentityId to, Amount amount) {
  if (amount < 0 || amount > available()) throw std::logic_error("contract payout exceeds its balance");
  if (amount == 0) return;
  committed_ += amount;
  payments_.push_back({to, amount});
}

void CallContext::burn(Amount amount) {
  if (amount < 0 || amount > available()) throw std::logic_error("contract burn exceeds its balance");
  committed_ += amount;
  burned_ += amount;
}

Chain::Chain(ChainOptions options) : options_(options), meter_(options.charge_policy) {
  fee_sink_ = create_identity(std::nullopt, false, "fee-sink");
  burn_sink_ = create_identity(std::nullopt, false, "burn-sink");
  record_beacon(0);
}

IdentityId Chain::create_identity(std::optional<PrincipalId> owner, bool pseudonym, std::string label) {
  Identity identity;
  identity.id = IdentityId{identities_.size() + 1};
  identity.is_pseudonym = pseudonym;
  identity.owner = owner;
  identity.label = std::move(label);
  identities_.push_back(identity);
  state_.ledger.emplace(identity.id, 0);
  return identity.id;
}

const Identity& Chain::identity(IdentityId id) const {
  if (id.value == 0 || id.value > identities_.size()) throw ChainError(Error::BadArguments, "unknown identity");
  return identities_[id.value - 1];
}

void Chain::mint(IdentityId to, Amount amount) {
  if (amount < 0) throw std::invalid_argument("mint amount must be non-negative");
  identity(to);
  state_.ledger[to] += amount;
  state_.minted += amount;
}

Amount Chain::balance(IdentityId id) const {
  auto it = state_.ledger.find(id);
  return it == state_.ledger.end() ? 0 : it->second;
}

Amount Chain::total_supply() const {
  Amount total = state_.escrowed;
  for (const auto& [id, amount] : state_.ledger) total += amount;
  return total;
}

IdentityId Chain::deploy(IdentityId sender, std::unique_ptr<Contract> contract, CostModel costs,
                         Amount attached_value) {
  identity(sender);
  if (attached_value < 0) throw ChainError(Error::BadArguments, "negative value");
  if (balance(sender) < attached_value) throw ChainError(Error::InsufficientBalance);
  const std::string kind(contract->kind());
  costs.at("constructor");
  const IdentityId address{identities_.size() + 1};
  contract->on_deploy(address, sender, attached_value, state_.height);
  create_identity(std::nullopt, false, kind);
  state_.ledger[sender] -= attached_value;
  state_.ledger[address] += attached_value;

  Transaction tx;
  tx.seq = next_seq_++;
  tx.block = state_.height;
  tx.sender = sender;
  tx.contract = address;
  tx.call = Call{"constructor", {}};
  tx.attached_value = attached_value;
  tx.status = TxStatus::Accepted;
  tx.gas = meter_.charge(costs, kind, "constructor");
  tx.fee = std::min(tx.gas * options_.gas_price, balance(sender));
  state_.ledger[sender] -= tx.fee;
  state_.ledger[fee_sink_] += tx.fee;
  state_.log.push_back(tx);
  contracts_.emplace(address, Installed{std::move(contract), std::move(costs)});
  return address;
}

Chain::Installed& Chain::installed(IdentityId id) {
  auto it = contracts_.find(id);
  if (it == contracts_.end()) throw ChainError(Error::UnknownContract);
  return it->second;
}

Contract& Chain::contract(IdentityId id) { return *installed(id).contract; }

const Contract& Chain::contract(IdentityId id) const {
  auto it = contracts_.find(id);
  if (it == contracts_.end()) throw ChainError(Error::UnknownContract);
  return *it->second.contract;
}

Transaction Chain::submit(IdentityId sender, IdentityId contract, Call call, Amount attached_value) {
  identity(sender);
  Installed& target = installed(contract);
  if (call.function == "constructor" || !target.costs.contains(call.function)) {
    throw ChainError(Error::UnknownFunction, call.function);
  }
  if (attached_value < 0) throw ChainError(Error::BadArguments, "negative value");
  if (balance(sender) < attached_value) throw ChainError(Error::InsufficientBalance);
  state_.ledger[sender] -= attached_value;
  state_.escrowed += attached_value;
  Transaction tx;
  tx.seq = next_seq_++;
  tx.sender = sender;
  tx.contract = contract;
  tx.call = std::move(call);
  tx.attached_value = attached_value;
  mempool_.push_back(std::move(tx));
  return mempool_.back();
}

void Chain::execute(Transaction& tx) {
  Installed& target = installed(tx.contract);
  state_.escrowed -= tx.attached_value;
  CallContext ctx(*this, tx, balance(tx.contract));
  CallResult result;
  try {
    result = target.contract->execute(ctx, tx.call);
  } catch (const ChainError& e) {
    result = CallResult::reject(e.code(), e.what());
  }
  tx.status = result.status;
  tx.error = result.error;
  tx.note = std::move(result.note);
  if (tx.status == TxStatus::Rejected) {
    state_.ledger[tx.sender] += tx.attached_value;
  } else {
    state_.ledger[tx.contract] += tx.attached_value;
    for (const Payment& p : ctx.payments()) {
      state_.ledger[tx.contract] -= p.amount;
      state_.ledger[p.to] += p.amount;
    }
    state_.ledger[tx.contract] -= ctx.burned();
    state_.ledger[burn_sink_] += ctx.burned();
  }
  tx.gas = meter_.charge(target.costs, target.contract->kind(), tx.call.function);
  tx.fee = std::min(tx.gas * options_.gas_price, balance(tx.sender));
  state_.ledger[tx.sender] -= tx.fee;
  state_.ledger[fee_sink_] += tx.fee;
}

std::vector<Transaction> Chain::advance_block() {
  ++state_.height;
  record_beacon(state_.height);
  std::vector<Transaction> block;
  block.swap(mempool_);
  for (Transaction& tx : block) {
    tx.block = state_.height;
    execute(tx);
    state_.log.push_back(tx);
  }
  return block;
}

void Chain::advance_to(Height target) {
  while (state_.height < target) advance_block();
}

void Chain::record_beacon(Height h) {
  crypto::HashWriter w;
  w.add(std::string_view("chainlab.beacon")).add(options_.seed).add(static_cast<std::int64_t>(h));
  state_.beacon.emplace(h, w.digest());
}

const crypto::Digest& Chain::beacon_output(Height h) const {
  auto it = state_.beacon.find(h);
  if (h > state_.height || it == state_.beacon.end()) throw ChainError(Error::FutureBlock);
  return it->second;
}

namespace {

crypto::Digest identity_secret(std::uint64_t seed, IdentityId id) {
  crypto::HashWriter w;
  w.add(std::string_view("chainlab.identity-key")).add(seed).add(id.value);
  return w.digest();
}

}  // namespace

crypto::Digest Chain::identity_sign(IdentityId signer, const crypto::Digest& message) const {
  identity(signer);
  crypto::HashWriter w;
  w.add(std::string_view("chainlab.identity-sig")).add(identity_secret(options_.seed, signer)).add(message);
  return w.digest();
}

bool Chain::identity_verify(IdentityId signer, const crypto::Digest& message, const crypto::Digest& signature) const {
  if (signer.value == 0 || signer.value > identities_.size()) return false;
  return identity_sign(signer, message) == signature;
}

namespace {

void add_arg(crypto::HashWriter& w, const Arg& arg) {
  w.add(static_cast<std::uint64_t>(arg.index()));
  std::visit(
      [&w](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IdentityId>) {
          w.add(v.value);
        } else if constexpr (std::is_same_v<T, std::string>) {
          w.add(std::string_view(v));
        } else {
          w.add(v);
        }
      },
      arg);
}

}  // namespace

crypto::Digest Chain::state_digest() const {
  crypto::HashWriter w;
  w.add(std::string_view("chainlab.state")).add(static_cast<std::int64_t>(state_.height));
  w.add(static_cast<std::int64_t>(state_.minted)).add(static_cast<std::int64_t>(state_.escrowed));
  for (const auto& [id, amount] : state_.ledger) w.add(id.value).add(static_cast<std::int64_t>(amount));
  for (const Transaction& tx : state_.log) {
    w.add(tx.seq).add(static_cast<std::int64_t>(tx.block)).add(tx.sender.value).add(tx.contract.value);
    w.add(std::string_view(tx.call.function)).add(static_cast<std::uint64_t>(tx.call.args.size()));
    for (const Arg& a : tx.call.args) add_arg(w, a);
    w.add(static_cast<std::int64_t>(tx.attached_value)).add(static_cast<std::int64_t>(tx.status));
    w.add(tx.error ? static_cast<std::int64_t>(*tx.error) : std::int64_t{-1});
    w.add(static_cast<std::int64_t>(tx.gas)).add(static_cast<std::int64_t>(tx.fee));
  }
  for (const auto& [h, rho] : state_.beacon) w.add(static_cast<std::int64_t>(h)).add(rho);
  for (const auto& [id, inst] : contracts_) {
    w.add(id.value);
    inst.contract->digest_into(w);
  }
  return w.digest();
}

}  // namespace chainlab::simchain
