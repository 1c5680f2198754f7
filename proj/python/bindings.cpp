#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chainlab/auction/bat.hpp"
#include "chainlab/crypto/hash.hpp"
#include "chainlab/crypto/rsa.hpp"
#include "chainlab/harness/checks.hpp"
#include "chainlab/harness/od_check.hpp"
#include "chainlab/harness/report.hpp"
#include "chainlab/harness/sweep.hpp"

namespace py = pybind11;
namespace h = chainlab::harness;
namespace cr = chainlab::crypto;
namespace au = chainlab::auction;

namespace {

// Python ints cross the boundary as decimal strings.
py::int_ to_py(const cr::BigInt& v) { return py::int_(py::module_::import("builtins").attr("int")(cr::to_decimal(v))); }

cr::BigInt from_py(const py::int_& v) { return cr::from_decimal(v.attr("__str__")().cast<std::string>()); }

h::Scenario load(const std::string& path, std::optional<std::uint64_t> seed) {
  h::Scenario s = h::load_scenario(path);
  if (seed) s.set_seed(*seed);
  return s;
}

py::dict run_scenario(const std::string& path, std::optional<std::uint64_t> seed) {
  const h::Scenario s = load(path, seed);
  h::validate(s);
  py::dict out;
  out["name"] = s.name;
  out["seed"] = s.seed();
  if (s.protocol == h::Scenario::Protocol::BlindVote) {
    const h::VoteRun run = h::run_vote(s.vote);
    out["protocol"] = "blindvote";
    out["violations"] = h::check_vote(s.vote, run);
    out["report"] = h::gas_csv(h::gas_rows(*run.chain, run.parties));
    out["tally"] = run.contract().tally();
    out["cancelled"] = run.contract().cancelled();
    out["total_gas"] = run.total_gas();
    out["balances"] = h::balances_csv(run.parties);
    out["penalties"] = h::penalties_csv(run.penalties);
    out["transactions"] = run.chain->state().log.size();
    out["log"] = h::serialize_log(*run.chain);
    return out;
  }
  const h::AuctionRun run = h::run_auction(s.auction);
  const auto& c = run.contract();
  out["protocol"] = "auction";
  out["violations"] = h::check_auction(s.auction, run);
  out["report"] = h::auction_csv({h::summarize(run)});
  out["winner"] = c.winner() ? py::cast(*c.winner() + 1) : py::none();
  out["winning_bid"] = c.winner() ? py::cast(c.winning_bid()) : py::none();
  out["rounds"] = c.round();
  out["calls_per_bidder"] = run.calls_per_bidder;
  out["balances"] = h::balances_csv(run.parties);
  out["penalties"] = h::penalties_csv(run.penalties);
  out["transactions"] = run.chain->state().log.size();
  out["log"] = h::serialize_log(*run.chain);
  return out;
}

py::dict od_check(const std::string& path, const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                  const std::string& observer, std::optional<std::uint64_t> seed) {
  const h::Scenario s = load(path, seed);
  if (s.protocol != h::Scenario::Protocol::Auction) {
    throw h::HarnessError(h::HarnessError::Kind::InvalidScenario, "od-check needs an auction scenario");
  }
  const auto v = h::check_observational_determinism(s.auction, a, b, h::ObserverSpec::parse(observer));
  py::dict out;
  out["equal"] = v.equal;
  out["divergence"] = v.divergence ? py::cast(*v.divergence) : py::none();
  out["runs"] = v.runs;
  out["observer"] = v.trace_a.observer;
  out["description"] = v.describe();
  out["trace_a"] = h::to_text(v.trace_a);
  out["trace_b"] = h::to_text(v.trace_b);
  return out;
}

std::string sweep(const std::string& param, std::int64_t step, const std::string& protocol, std::uint64_t seed) {
  const auto range = h::SweepRange::parse(param, step);
  if (protocol == "blindvote") return h::sweep_vote_csv(range, h::honest_vote(1, seed));
  if (protocol == "auction") return h::sweep_auction_csv(range, h::random_auction(au::Variant::P2, 8, 64, seed));
  throw h::HarnessError(h::HarnessError::Kind::InvalidScenario, "unknown protocol '" + protocol + "'");
}

}  // namespace

PYBIND11_MODULE(_chainlab, m) {
  m.doc() = "Simulated blockchain lab: blind-signature voting and sealed-bid auctions";

  py::register_exception<h::HarnessError>(m, "HarnessError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const cr::CryptoError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const chainlab::simchain::ChainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("run_scenario", &run_scenario, py::arg("path"), py::arg("seed") = py::none(),
        "Run a scenario file; returns reports, outcome and property violations.");
  m.def("od_check", &od_check, py::arg("path"), py::arg("bids_a"), py::arg("bids_b"),
        py::arg("observer") = "outside", py::arg("seed") = py::none());
  m.def("sweep", &sweep, py::arg("param"), py::arg("step") = 1, py::arg("protocol") = "blindvote",
        py::arg("seed") = 1, "CSV plot data over a range such as 'n=10..100'.");
  m.def(
      "validate_scenario",
      [](const std::string& json_text) {
        const auto s = h::parse_scenario(json_text);
        h::validate(s);
        return s.protocol == h::Scenario::Protocol::BlindVote ? "blindvote" : "auction";
      },
      py::arg("json_text"));

  m.def("sha256", [](py::bytes data) {
    const std::string s = data;
    return cr::to_hex(cr::sha256({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}));
  });
  m.def(
      "rsa_keypair",
      [](const py::int_& p, const py::int_& q, const py::int_& e) {
        const auto k = cr::keypair_from_primes(from_py(p), from_py(q), from_py(e));
        return py::make_tuple(to_py(k.modulus), to_py(k.public_exponent), to_py(k.private_exponent));
      },
      py::arg("p"), py::arg("q"), py::arg("e"), "(N, e, d) for distinct primes p and q.");
  m.def(
      "blind",
      [](const py::int_& h_, const py::int_& r, const py::int_& n, const py::int_& e) {
        return to_py(cr::blind(from_py(h_), from_py(r), {from_py(n), from_py(e)}));
      },
      py::arg("h"), py::arg("r"), py::arg("n"), py::arg("e"));
  m.def(
      "unblind",
      [](const py::int_& s, const py::int_& r, const py::int_& n) {
        return to_py(cr::unblind(from_py(s), from_py(r), from_py(n)));
      },
      py::arg("s"), py::arg("r"), py::arg("n"));
  m.def(
      "rsa_sign",
      [](const py::int_& x, const py::int_& n, const py::int_& d) {
        return to_py(cr::sign(from_py(x), cr::RsaKeyPair{from_py(n), 0, from_py(d)}));
      },
      py::arg("x"), py::arg("n"), py::arg("d"));
  m.def(
      "rsa_verify",
      [](const py::int_& h_, const py::int_& s, const py::int_& n, const py::int_& e) {
        return cr::verify(from_py(h_), from_py(s), {from_py(n), from_py(e)});
      },
      py::arg("h"), py::arg("s"), py::arg("n"), py::arg("e"));

  m.def("bat_depth", &au::bat_depth, py::arg("m"));
  m.def(
      "bat_children",
      [](std::int64_t lo, std::int64_t hi) {
        const auto [l, r] = au::bat_children({lo, hi});
        return py::make_tuple(py::make_tuple(l.lo, l.hi), py::make_tuple(r.lo, r.hi));
      },
      py::arg("lo"), py::arg("hi"));
}
