// Copyright 2026 The Ridechain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ridechain/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "fmt/format.h"

#include "ridechain/codec.hpp"
#include "ridechain/contracts.hpp"
#include "ridechain/log.hpp"
#include "ridechain/zksm.hpp"

namespace ridechain::cli {
namespace {

using agents::Scenario;
using ledger::Address;
using ledger::Amount;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(Errc::kScenarioError, path + ": " + what);
}

// Object view that records which keys were read and rejects the rest.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) schema_error(path_, "expected object");
  }

  std::string at(std::string_view key) const { return path_ + "." + std::string(key); }

  const json* find(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& need(std::string_view key) {
    const json* v = find(key);
    if (!v) schema_error(at(key), "missing");
    return *v;
  }

  std::uint64_t u64(std::string_view key, std::optional<std::uint64_t> fallback = {}) {
    const json* v = find(key);
    if (!v) {
      if (!fallback) schema_error(at(key), "missing");
      return *fallback;
    }
    if (!v->is_number_integer() || (!v->is_number_unsigned() && v->get<std::int64_t>() < 0)) {
      schema_error(at(key), "expected non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  std::int64_t i64(std::string_view key, std::optional<std::int64_t> fallback = {}) {
    const json* v = find(key);
    if (!v) {
      if (!fallback) schema_error(at(key), "missing");
      return *fallback;
    }
    if (!v->is_number_integer()) schema_error(at(key), "expected integer");
    return v->get<std::int64_t>();
  }

  double number(std::string_view key, std::optional<double> fallback = {}) {
    const json* v = find(key);
    if (!v) {
      if (!fallback) schema_error(at(key), "missing");
      return *fallback;
    }
    if (!v->is_number()) schema_error(at(key), "expected number");
    return v->get<double>();
  }

  std::string string(std::string_view key, std::optional<std::string> fallback = {}) {
    const json* v = find(key);
    if (!v) {
      if (!fallback) schema_error(at(key), "missing");
      return *fallback;
    }
    if (!v->is_string()) schema_error(at(key), "expected string");
    return v->get<std::string>();
  }

  bool boolean(std::string_view key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) schema_error(at(key), "expected boolean");
    return v->get<bool>();
  }

  const json& array(std::string_view key, bool required) {
    static const json kEmpty = json::array();
    const json* v = find(key);
    if (!v) {
      if (required) schema_error(at(key), "missing");
      return kEmpty;
    }
    if (!v->is_array()) schema_error(at(key), "expected array");
    return *v;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) schema_error(at(it.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string index_path(const std::string& base, std::size_t i) {
  return fmt::format("{}[{}]", base, i);
}

GeoPoint parse_point(const json& j, const std::string& path) {
  Fields f(j, path);
  GeoPoint p{f.number("lat"), f.number("lon")};
  f.finish();
  return p;
}

json point_json(const GeoPoint& p) { return {{"lat", p.lat}, {"lon", p.lon}}; }

Coverage parse_coverage(const json& j, const std::string& path) {
  Fields f(j, path);
  const std::string kind = f.string("kind");
  Coverage c;
  if (kind == "circle") {
    c = Coverage::circle(parse_point(f.need("center"), f.at("center")), f.number("radius_m"));
  } else if (kind == "polygon") {
    const json& verts = f.array("vertices", true);
    std::vector<GeoPoint> pts;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      pts.push_back(parse_point(verts[i], index_path(f.at("vertices"), i)));
    }
    if (pts.size() < 3) schema_error(f.at("vertices"), "polygon needs at least 3 vertices");
    c = Coverage::make_polygon(std::move(pts));
  } else {
    schema_error(f.at("kind"), "expected \"circle\" or \"polygon\"");
  }
  f.finish();
  return c;
}

json coverage_json(const Coverage& c) {
  if (c.kind == Coverage::Kind::kCircle) {
    return {{"kind", "circle"}, {"center", point_json(c.center)}, {"radius_m", c.radius_m}};
  }
  json verts = json::array();
  for (const auto& p : c.polygon) verts.push_back(point_json(p));
  return {{"kind", "polygon"}, {"vertices", verts}};
}

matching::MatchPreferences parse_prefs(const json* j, const std::string& path) {
  matching::MatchPreferences p;
  if (!j) return p;
  Fields f(*j, path);
  p.delta_m = f.number("delta_m", p.delta_m);
  p.tau_s = f.i64("tau_s", p.tau_s);
  p.w_delta = f.number("w_delta", p.w_delta);
  p.w_tau = f.number("w_tau", p.w_tau);
  p.w_bid = f.number("w_bid", p.w_bid);
  p.w_rep = f.number("w_rep", p.w_rep);
  f.finish();
  return p;
}

agents::RiderSpec parse_rider(const json& j, const std::string& path) {
  Fields f(j, path);
  agents::RiderSpec r;
  r.name = f.string("name");
  const std::string behavior = f.string("behavior", "honest");
  auto b = agents::parse_behavior(behavior);
  if (!b) schema_error(f.at("behavior"), "unknown behavior \"" + behavior + "\"");
  r.behavior = *b;
  r.impostor_attempt = f.boolean("impostor_attempt", false);
  r.prefs = parse_prefs(f.find("preferences"), f.at("preferences"));
  const json& trips = f.array("trips", true);
  for (std::size_t i = 0; i < trips.size(); ++i) {
    Fields t(trips[i], index_path(f.at("trips"), i));
    agents::RiderTrip trip;
    trip.desired.pickup = parse_point(t.need("pickup"), t.at("pickup"));
    trip.desired.pickup_time = t.i64("pickup_time");
    trip.desired.dropoff = parse_point(t.need("dropoff"), t.at("dropoff"));
    trip.desired.dropoff_time = t.i64("dropoff_time");
    if (t.find("max_offers")) {
      const std::uint64_t m = t.u64("max_offers");
      if (m == 0 || m > UINT32_MAX) schema_error(t.at("max_offers"), "out of range");
      trip.max_offers = static_cast<std::uint32_t>(m);
    }
    t.finish();
    r.trips.push_back(trip);
  }
  f.finish();
  return r;
}

agents::DriverSpec parse_driver(const json& j, const std::string& path) {
  Fields f(j, path);
  agents::DriverSpec d;
  d.name = f.string("name");
  d.bid = f.u64("bid");
  const std::string profile = f.string("profile", "honest");
  auto p = agents::parse_profile(profile);
  if (!p) schema_error(f.at("profile"), "unknown profile \"" + profile + "\"");
  d.profile = *p;
  const json& route = f.array("route", true);
  for (std::size_t i = 0; i < route.size(); ++i) {
    Fields w(route[i], index_path(f.at("route"), i));
    d.route.push_back({GeoPoint{w.number("lat"), w.number("lon")}, w.i64("time")});
    w.finish();
  }
  f.finish();
  return d;
}

int small_int(Fields& f, std::string_view key, std::optional<std::int64_t> fallback) {
  const std::int64_t v = f.i64(key, fallback);
  if (v < INT32_MIN || v > INT32_MAX) schema_error(f.at(key), "out of range");
  return static_cast<int>(v);
}

std::string label_for(const agents::SimulationResult& r, const Address& a) {
  if (a == r.registry) return "registry";
  for (const auto& d : r.drivers) {
    if (d.address == a) return "driver:" + d.name;
  }
  for (const auto& t : r.trips) {
    const std::string base = fmt::format("rider:{}#{}", t.rider, t.trip_index);
    if (t.request_address == a) return base;
    if (t.deposit && *t.deposit == a) return base + "/deposit";
    if (t.payment && *t.payment == a) return base + "/payment";
  }
  return "";
}

json balances_json(const std::map<Address, Amount>& m) {
  json out = json::object();
  for (const auto& [a, v] : m) out[a.hex()] = v;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scenario files.

ScenarioFile parse_scenario(const json& doc) {
  Fields top(doc, "$");
  const std::uint64_t version = top.u64("version");
  if (version != kScenarioVersion) {
    schema_error(top.at("version"), fmt::format("unsupported version {}", version));
  }
  ScenarioFile file;
  file.name = top.string("name", "");
  if (top.find("seed")) file.seed = top.u64("seed");
  Scenario& s = file.scenario;

  {
    Fields g(top.need("grid"), top.at("grid"));
    Fields box(g.need("box"), g.at("box"));
    s.box = {box.number("south"), box.number("west"), box.number("north"), box.number("east")};
    box.finish();
    s.rows = small_int(g, "rows", {});
    s.cols = small_int(g, "cols", {});
    g.finish();
  }
  s.interval_s = top.i64("interval_s", s.interval_s);
  s.precision = small_int(top, "precision", s.precision);
  s.zksm_k = top.u64("zksm_k", s.zksm_k);
  s.reputation_threshold = top.number("reputation_threshold", s.reputation_threshold);

  if (const json* e = top.find("economy")) {
    Fields f(*e, top.at("economy"));
    auto& x = s.economy;
    x.rider_balance = f.u64("rider_balance", x.rider_balance);
    x.driver_balance = f.u64("driver_balance", x.driver_balance);
    x.bond = f.u64("bond", x.bond);
    x.rider_deposit = f.u64("rider_deposit", x.rider_deposit);
    x.driver_deposit = f.u64("driver_deposit", x.driver_deposit);
    f.finish();
  }
  if (const json* t = top.find("timing")) {
    Fields f(*t, top.at("timing"));
    auto& x = s.timing;
    x.request_lead = f.i64("request_lead", x.request_lead);
    x.offer_window = f.i64("offer_window", x.offer_window);
    x.accept_window = f.i64("accept_window", x.accept_window);
    x.fine_grace = f.i64("fine_grace", x.fine_grace);
    x.segment_s = f.i64("segment_s", x.segment_s);
    x.payment_grace = f.i64("payment_grace", x.payment_grace);
    x.distance_unit_m = f.number("distance_unit_m", x.distance_unit_m);
    f.finish();
  }

  const json& riders = top.array("riders", true);
  for (std::size_t i = 0; i < riders.size(); ++i) {
    s.riders.push_back(parse_rider(riders[i], index_path(top.at("riders"), i)));
  }
  const json& drivers = top.array("drivers", false);
  for (std::size_t i = 0; i < drivers.size(); ++i) {
    s.drivers.push_back(parse_driver(drivers[i], index_path(top.at("drivers"), i)));
  }
  const json& lps = top.array("location_provers", false);
  for (std::size_t i = 0; i < lps.size(); ++i) {
    const std::string path = index_path(top.at("location_provers"), i);
    Fields f(lps[i], path);
    agents::LocationProverSpec lp;
    lp.id = f.string("id");
    lp.coverage = parse_coverage(f.need("coverage"), f.at("coverage"));
    f.finish();
    s.location_provers.push_back(std::move(lp));
  }
  top.finish();
  agents::validate(s);
  return file;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kScenarioError, "cannot read " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kScenarioError, path + ": " + e.what());
  }
  return parse_scenario(doc);
}

json scenario_to_json(const ScenarioFile& file) {
  const Scenario& s = file.scenario;
  json riders = json::array();
  for (const auto& r : s.riders) {
    json trips = json::array();
    for (const auto& t : r.trips) {
      json tj = {{"pickup", point_json(t.desired.pickup)},
                 {"pickup_time", t.desired.pickup_time},
                 {"dropoff", point_json(t.desired.dropoff)},
                 {"dropoff_time", t.desired.dropoff_time}};
      if (t.max_offers) tj["max_offers"] = *t.max_offers;
      trips.push_back(tj);
    }
    riders.push_back({{"name", r.name},
                      {"behavior", agents::behavior_name(r.behavior)},
                      {"impostor_attempt", r.impostor_attempt},
                      {"preferences",
                       {{"delta_m", r.prefs.delta_m},
                        {"tau_s", r.prefs.tau_s},
                        {"w_delta", r.prefs.w_delta},
                        {"w_tau", r.prefs.w_tau},
                        {"w_bid", r.prefs.w_bid},
                        {"w_rep", r.prefs.w_rep}}},
                      {"trips", trips}});
  }
  json drivers = json::array();
  for (const auto& d : s.drivers) {
    json route = json::array();
    for (const auto& w : d.route) {
      route.push_back({{"lat", w.point.lat}, {"lon", w.point.lon}, {"time", w.time}});
    }
    drivers.push_back({{"name", d.name},
                       {"bid", d.bid},
                       {"profile", agents::profile_name(d.profile)},
                       {"route", route}});
  }
  json lps = json::array();
  for (const auto& lp : s.location_provers) {
    lps.push_back({{"id", lp.id}, {"coverage", coverage_json(lp.coverage)}});
  }
  json doc = {
      {"version", kScenarioVersion},
      {"name", file.name},
      {"grid",
       {{"box",
         {{"south", s.box.south}, {"west", s.box.west}, {"north", s.box.north},
          {"east", s.box.east}}},
        {"rows", s.rows},
        {"cols", s.cols}}},
      {"interval_s", s.interval_s},
      {"precision", s.precision},
      {"zksm_k", s.zksm_k},
      {"reputation_threshold", s.reputation_threshold},
      {"economy",
       {{"rider_balance", s.economy.rider_balance},
        {"driver_balance", s.economy.driver_balance},
        {"bond", s.economy.bond},
        {"rider_deposit", s.economy.rider_deposit},
        {"driver_deposit", s.economy.driver_deposit}}},
      {"timing",
       {{"request_lead", s.timing.request_lead},
        {"offer_window", s.timing.offer_window},
        {"accept_window", s.timing.accept_window},
        {"fine_grace", s.timing.fine_grace},
        {"segment_s", s.timing.segment_s},
        {"payment_grace", s.timing.payment_grace},
        {"distance_unit_m", s.timing.distance_unit_m}}},
      {"riders", riders},
      {"drivers", drivers},
      {"location_provers", lps}};
  if (file.seed) doc["seed"] = *file.seed;
  return doc;
}

// ---------------------------------------------------------------------------
// Reports.

json build_report(const agents::SimulationResult& r, const std::string& name,
                  std::uint64_t seed) {
  const auto& state = r.final_state;
  std::map<std::string, std::uint64_t> outcomes;
  json trips = json::array();
  for (const auto& t : r.trips) {
    ++outcomes[std::string(agents::outcome_name(t.outcome))];
    trips.push_back(t.to_json());
  }
  std::map<std::string, std::uint64_t> events;
  for (const auto& e : state.events) ++events[e.name];

  std::set<Address> accounts;
  for (const auto& [a, _] : r.genesis) accounts.insert(a);
  for (const auto& [a, _] : state.balances) accounts.insert(a);
  Amount genesis_supply = 0;
  for (const auto& [_, v] : r.genesis) genesis_supply += v;
  json balances = json::array();
  for (const Address& a : accounts) {
    auto g = r.genesis.find(a);
    balances.push_back({{"address", a.hex()},
                        {"label", label_for(r, a)},
                        {"genesis", g == r.genesis.end() ? 0 : g->second},
                        {"final", state.balance(a)}});
  }

  json reputation = json::array();
  const auto* bride = dynamic_cast<const contracts::BRide*>(state.contract(r.registry));
  for (const auto& d : r.drivers) {
    json row = {{"driver", d.name},
                {"address", d.address.hex()},
                {"profile", agents::profile_name(d.profile)}};
    if (bride) {
      row["score"] = bride->reputation(d.address).to_json();
      if (const auto* rec = bride->driver(d.address)) {
        row["bond"] = rec->bond;
        row["slashed"] = rec->slashed;
      }
    }
    reputation.push_back(row);
  }

  return {{"format", "ridechain-report"},
          {"version", kReportVersion},
          {"scenario", name},
          {"seed", seed},
          {"summary",
           {{"trips", r.trips.size()},
            {"outcomes", outcomes},
            {"events", events},
            {"genesis_supply", genesis_supply},
            {"final_supply", state.total_supply()},
            {"final_time", state.now},
            {"transactions", r.stats.transactions},
            {"rejected_transactions", r.stats.rejected_transactions}}},
          {"trips", trips},
          {"balances", balances},
          {"reputation", reputation},
          {"proofs",
           {{"generated", r.stats.proofs_generated},
            {"accepted", r.stats.proofs_accepted},
            {"proof_bytes", r.stats.proof_bytes}}}};
}

std::string build_trace(const agents::SimulationResult& r, std::uint64_t seed) {
  std::string out;
  auto line = [&](const json& j) {
    out += j.dump();
    out += '\n';
  };
  line({{"type", "header"},
        {"format", "ridechain-trace"},
        {"version", kTraceVersion},
        {"seed", seed},
        {"registry", r.registry.hex()}});
  line({{"type", "genesis"}, {"balances", balances_json(r.genesis)}});
  for (const auto& e : r.final_state.events) {
    json j = e.to_json();
    j["type"] = "event";
    line(j);
  }
  line({{"type", "final"},
        {"now", r.final_state.now},
        {"tx_count", r.final_state.tx_count},
        {"balances", balances_json(r.final_state.balances)}});
  return out;
}

json build_timing(const agents::RunStats& stats) {
  auto phase = [](const agents::PhaseStats& p) {
    return json{{"count", p.count}, {"total_ms", p.total_ms}, {"mean_ms", p.mean_ms()}};
  };
  return {{"setup", phase(stats.setup)},
          {"audit", phase(stats.audit)},
          {"prove", phase(stats.prove)},
          {"verify", phase(stats.verify)}};
}

// ---------------------------------------------------------------------------
// Trace verification.

namespace {

struct Movement {
  std::string to;
  Amount amount = 0;
  std::string source;  // event name, for diagnostics

  bool operator<(const Movement& o) const {
    return std::tie(to, amount) < std::tie(o.to, o.amount);
  }
};

class TraceChecker {
 public:
  TraceCheck run(std::istream& in) {
    std::string text;
    std::size_t lineno = 0;
    try {
      while (std::getline(in, text)) {
        ++lineno;
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
          j = json::parse(text);
        } catch (const json::parse_error& e) {
          return fail("format", fmt::format("line {}: {}", lineno, e.what()));
        }
        if (!line(j, lineno)) return result_;
      }
      if (!flush()) return result_;
      if (have_final_ && !final_checked_) check_final();
    } catch (const json::exception& e) {
      return fail("format", fmt::format("line {}: {}", lineno, e.what()));
    } catch (const Error& e) {
      return fail("format", fmt::format("line {}: {}", lineno, e.what()));
    }
    return result_;
  }

 private:
  TraceCheck fail(std::string check, std::string message) {
    result_.ok = false;
    result_.check = std::move(check);
    result_.message = std::move(message);
    return result_;
  }

  bool line(const json& j, std::size_t lineno) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "header") {
      if (j.at("version").get<int>() != kTraceVersion) {
        fail("format", fmt::format("line {}: unsupported trace version", lineno));
        return false;
      }
      return true;
    }
    if (type == "genesis") {
      if (have_genesis_ || result_.events) {
        fail("format", fmt::format("line {}: unexpected genesis record", lineno));
        return false;
      }
      have_genesis_ = true;
      for (const auto& [a, v] : j.at("balances").items()) {
        balances_[a] = v.get<Amount>();
        genesis_supply_ += v.get<Amount>();
      }
      return true;
    }
    if (type == "event") return event(j, lineno);
    if (type == "final") {
      if (!flush()) return false;
      have_final_ = true;
      final_ = j.at("balances");
      return check_final();
    }
    fail("format", fmt::format("line {}: unknown record type \"{}\"", lineno, type));
    return false;
  }

  bool event(const json& j, std::size_t lineno) {
    const auto seq = j.at("seq").get<std::uint64_t>();
    const auto tx = j.at("tx").get<std::uint64_t>();
    if (result_.events && (seq <= last_seq_ || tx < tx_)) {
      fail("format", fmt::format("line {}: events out of order", lineno));
      return false;
    }
    if (!result_.events || tx != tx_) {
      if (!flush()) return false;
      tx_ = tx;
    }
    last_seq_ = seq;
    ++result_.events;
    const std::string name = j.at("name").get<std::string>();
    const std::string contract = j.at("contract").get<std::string>();
    const json& p = j.at("payload");

    if (name == "Transfer") {
      const std::string from = p.at("from").get<std::string>();
      const std::string to = p.at("to").get<std::string>();
      const Amount amount = p.at("amount").get<Amount>();
      Amount& src = balances_[from];
      if (src < amount) {
        fail("conservation", fmt::format("tx {}: transfer of {} overdraws {} (balance {})", tx,
                                         amount, from, src));
        return false;
      }
      src -= amount;
      balances_[to] += amount;
      transfers_.push_back({to, amount, name});
      return true;
    }

    auto expect = [&](const std::string& to, Amount amount) {
      if (amount > 0) claims_.push_back({to, amount, name});
    };
    if (name == "DepositOpened") {
      expect(p.at("deposit").get<std::string>(), p.at("amount").get<Amount>());
    } else if (name == "PaymentOpened") {
      expect(p.at("payment").get<std::string>(), p.at("amount").get<Amount>());
      escrow_[p.at("payment").get<std::string>()] = p.at("amount").get<Amount>();
    } else if (name == "DriverRegistered") {
      expect(contract, p.at("bond").get<Amount>());
    } else if (name == "DepositArmed") {
      expect(contract, p.at("amount").get<Amount>());
      return transition(contract, "", "armed", name, tx);
    } else if (name == "ArrivalClaimed") {
      expect(p.at("driver").get<std::string>(), p.at("amount").get<Amount>());
      if (!transition(contract, "armed", "claimed", name, tx)) return false;
      return proof(p, contract, tx);
    } else if (name == "DriverFined") {
      expect(p.at("to").get<std::string>(), p.at("amount").get<Amount>());
      return transition(contract, "armed", "fined", name, tx);
    } else if (name == "Refunded") {
      expect(p.at("to").get<std::string>(), p.at("amount").get<Amount>());
      if (p.at("reason").get<std::string>() == "expired") {
        return transition(contract, "", "expired", name, tx);
      }
    } else if (name == "SegmentPaid") {
      expect(p.at("driver").get<std::string>(), p.at("amount").get<Amount>());
      return segment(contract, p, tx);
    } else if (name == "TripCompleted") {
      auto& st = payments_[contract];
      if (st.completed) {
        fail("exclusivity", fmt::format("tx {}: payment {} completed twice", tx, contract));
        return false;
      }
      st.completed = true;
    } else if (name == "BondSlashed") {
      for (const auto& pay : p.at("payouts")) {
        expect(pay.at("to").get<std::string>(), pay.at("amount").get<Amount>());
      }
    }
    return true;
  }

  bool transition(const std::string& deposit, const std::string& from, const std::string& to,
                  const std::string& event, std::uint64_t tx) {
    auto it = deposits_.find(deposit);
    const std::string current = it == deposits_.end() ? "" : it->second;
    if (current != from) {
      fail("exclusivity", fmt::format("tx {}: {} on deposit {} in state \"{}\"", tx, event,
                                      deposit, current.empty() ? "awaiting" : current));
      return false;
    }
    deposits_[deposit] = to;
    return true;
  }

  bool segment(const std::string& payment, const json& p, std::uint64_t tx) {
    auto& st = payments_[payment];
    const auto index = p.at("index").get<std::uint64_t>();
    if (st.completed || index != st.segments) {
      fail("exclusivity", fmt::format("tx {}: unexpected segment {} on payment {}", tx, index,
                                      payment));
      return false;
    }
    ++st.segments;
    st.paid += p.at("amount").get<Amount>();
    auto esc = escrow_.find(payment);
    if (esc != escrow_.end() && st.paid > esc->second) {
      fail("conservation", fmt::format("tx {}: payment {} paid {} beyond escrow {}", tx, payment,
                                       st.paid, esc->second));
      return false;
    }
    return true;
  }

  bool proof(const json& p, const std::string& deposit, std::uint64_t tx) {
    ++result_.proofs;
    auto y = codec::g2_from_hex(p.at("y").get<std::string>());
    auto bytes = codec::bytes_from_hex(p.at("proof").get<std::string>());
    std::optional<zksm::MembershipProof> pi;
    if (bytes) pi = zksm::decode_proof(*bytes);
    if (!y || !pi || !zksm::verify(*y, *pi)) {
      fail("proof", fmt::format("tx {}: arrival proof on deposit {} does not verify", tx,
                                deposit));
      return false;
    }
    return true;
  }

  // Every money-moving semantic event of a transaction must be backed by a
  // Transfer of the same amount to the same account.
  bool flush() {
    std::multiset<Movement> pool(transfers_.begin(), transfers_.end());
    for (const auto& c : claims_) {
      auto it = pool.find(c);
      if (it == pool.end()) {
        fail("conservation", fmt::format("tx {}: {} of {} to {} has no matching transfer", tx_,
                                         c.source, c.amount, c.to));
        return false;
      }
      pool.erase(it);
    }
    transfers_.clear();
    claims_.clear();
    return true;
  }

  bool check_final() {
    final_checked_ = true;
    Amount replayed = 0;
    for (const auto& [_, v] : balances_) replayed += v;
    Amount final_supply = 0;
    for (const auto& [a, v] : final_.items()) {
      final_supply += v.get<Amount>();
      auto it = balances_.find(a);
      const Amount mine = it == balances_.end() ? 0 : it->second;
      if (mine != v.get<Amount>()) {
        fail("conservation", fmt::format("final balance of {} is {}, transfers give {}", a,
                                         v.get<Amount>(), mine));
        return false;
      }
    }
    for (const auto& [a, v] : balances_) {
      if (v && !final_.contains(a)) {
        fail("conservation", fmt::format("final balances omit {} holding {}", a, v));
        return false;
      }
    }
    if (have_genesis_ && (final_supply != genesis_supply_ || replayed != genesis_supply_)) {
      fail("conservation", fmt::format("genesis supply {} but final supply {}", genesis_supply_,
                                       final_supply));
      return false;
    }
    return true;
  }

  struct PaymentState {
    std::uint64_t segments = 0;
    Amount paid = 0;
    bool completed = false;
  };

  TraceCheck result_;
  std::map<std::string, Amount> balances_;
  Amount genesis_supply_ = 0;
  bool have_genesis_ = false;
  bool have_final_ = false;
  bool final_checked_ = false;
  json final_;
  std::uint64_t tx_ = 0;
  std::uint64_t last_seq_ = 0;
  std::vector<Movement> transfers_;
  std::vector<Movement> claims_;
  std::map<std::string, std::string> deposits_;
  std::map<std::string, PaymentState> payments_;
  std::map<std::string, Amount> escrow_;
};

}  // namespace

TraceCheck verify_trace(std::istream& in) { return TraceChecker().run(in); }

// ---------------------------------------------------------------------------
// Benchmark.

namespace {

PhaseTiming summarize(const std::vector<double>& xs) {
  PhaseTiming t;
  if (xs.empty()) return t;
  double sum = 0;
  for (double x : xs) sum += x;
  t.mean_ms = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double sq = 0;
    for (double x : xs) sq += (x - t.mean_ms) * (x - t.mean_ms);
    t.stddev_ms = std::sqrt(sq / static_cast<double>(xs.size() - 1));
  }
  return t;
}

template <typename F>
double time_ms(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto end = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(end - start).count();
}

}  // namespace

std::vector<BenchRow> bench_zksm(const std::vector<std::size_t>& ks, std::size_t reps,
                                 std::uint64_t seed) {
  const crypto::DeterministicRandom master(seed);
  std::vector<BenchRow> rows;
  for (std::size_t k : ks) {
    RIDECHAIN_ENFORCE(k >= 2, Errc::kSetTooSmall, "k must be at least 2");
    auto rng = master.fork(fmt::format("bench/{}", k));
    BenchRow row;
    row.k = k;
    row.reps = reps;
    std::vector<double> setup_ms, audit_ms, prove_ms, verify_ms;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      std::vector<crypto::Fr> elements(k);
      for (auto& e : elements) e = rng.nonzero_scalar();
      zksm::ZkSetup s;
      setup_ms.push_back(time_ms([&] { s = zksm::setup(elements, rng); }));
      bool audited = false;
      audit_ms.push_back(time_ms([&] { audited = zksm::audit(s); }));
      const crypto::Fr& element = elements[rep % k];
      const auto commitment = zksm::commit_location(element, rng);
      zksm::MembershipProof pi;
      prove_ms.push_back(time_ms(
          [&] { pi = zksm::prove(s, element, commitment.iota, commitment.commitment, rng); }));
      bool ok = false;
      verify_ms.push_back(time_ms([&] { ok = zksm::verify(s.y, pi); }));
      row.all_verified = row.all_verified && audited && ok;
      row.proof_bytes = zksm::encode(pi).size();
    }
    row.setup = summarize(setup_ms);
    row.audit = summarize(audit_ms);
    row.prove = summarize(prove_ms);
    row.verify = summarize(verify_ms);
    rows.push_back(row);
  }
  return rows;
}

void print_bench(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << fmt::format("{:>4} {:>5} {:>18} {:>18} {:>18} {:>18} {:>6} {:>3}\n", "k", "reps",
                     "setup ms", "audit ms", "prove ms", "verify ms", "bytes", "ok");
  auto cell = [](const PhaseTiming& t) { return fmt::format("{:.2f} +- {:.2f}", t.mean_ms, t.stddev_ms); };
  for (const auto& r : rows) {
    out << fmt::format("{:>4} {:>5} {:>18} {:>18} {:>18} {:>18} {:>6} {:>3}\n", r.k, r.reps,
                       cell(r.setup), cell(r.audit), cell(r.prove), cell(r.verify),
                       r.proof_bytes, r.all_verified ? "yes" : "no");
  }
}

json bench_to_json(const std::vector<BenchRow>& rows) {
  auto phase = [](const PhaseTiming& t) {
    return json{{"mean_ms", t.mean_ms}, {"stddev_ms", t.stddev_ms}};
  };
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"k", r.k},
                   {"reps", r.reps},
                   {"setup", phase(r.setup)},
                   {"audit", phase(r.audit)},
                   {"prove", phase(r.prove)},
                   {"verify", phase(r.verify)},
                   {"proof_bytes", r.proof_bytes},
                   {"all_verified", r.all_verified}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands.

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir, std::ostream& out, std::ostream& err) {
  ScenarioFile file;
  try {
    file = load_scenario(scenario_path);
  } catch (const Error& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  }
  const std::uint64_t effective = seed ? *seed : file.seed.value_or(0);
  RIDECHAIN_LOG_INFO("running {} with seed {}", scenario_path, effective);

  agents::SimulationResult result;
  try {
    result = agents::run_scenario(file.scenario, effective);
  } catch (const Error& e) {
    err << "engine error: " << e.what() << "\n";
    return e.code() == Errc::kScenarioError ? kExitSchema : kExitEngine;
  } catch (const std::exception& e) {
    err << "engine error: " << e.what() << "\n";
    return kExitEngine;
  }

  namespace fs = std::filesystem;
  try {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    auto write = [&](const fs::path& p, const std::string& text) {
      std::ofstream f(p, std::ios::binary | std::ios::trunc);
      f << text;
      if (!f) throw std::runtime_error("cannot write " + p.string());
    };
    write(dir / "report.json", build_report(result, file.name, effective).dump(2) + "\n");
    write(dir / "trace.jsonl", build_trace(result, effective));
    write(dir / "timing.json", build_timing(result.stats).dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "engine error: " << e.what() << "\n";
    return kExitEngine;
  }

  std::map<std::string, int> outcomes;
  for (const auto& t : result.trips) ++outcomes[std::string(agents::outcome_name(t.outcome))];
  out << fmt::format("{} trips, {} transactions", result.trips.size(), result.stats.transactions);
  for (const auto& [name, n] : outcomes) out << fmt::format(", {} {}", n, name);
  out << "\n";
  return kExitOk;
}

int cmd_verify_trace(const std::string& trace_path, std::ostream& out, std::ostream& err) {
  std::ifstream in(trace_path);
  if (!in) {
    err << "cannot read " << trace_path << "\n";
    return kExitUsage;
  }
  const TraceCheck check = verify_trace(in);
  if (!check.ok) {
    err << check.check << ": " << check.message << "\n";
    return check.check == "format" ? kExitSchema : kExitEngine;
  }
  out << fmt::format("ok: {} events, {} proofs verified\n", check.events, check.proofs);
  return kExitOk;
}

int cmd_bench_zksm(const std::vector<std::size_t>& ks, std::size_t reps, std::uint64_t seed,
                   bool as_json, std::ostream& out, std::ostream& err) {
  if (ks.empty() || reps == 0) {
    err << "bench-zksm needs at least one k and one repetition\n";
    return kExitUsage;
  }
  for (std::size_t k : ks) {
    if (k < 2) {
      err << "k must be at least 2\n";
      return kExitUsage;
    }
  }
  const auto rows = bench_zksm(ks, reps, seed);
  if (as_json) {
    out << bench_to_json(rows).dump(2) << "\n";
  } else {
    print_bench(out, rows);
  }
  return kExitOk;
}

}  // namespace ridechain::cli
