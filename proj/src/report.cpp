#include "pirc/report.hpp"

namespace pirc::report {

namespace {
constexpr const char* kCensusFlag = "os99: 7398 inequivalent (11,144,3) codes, not re-verified";
}  // namespace

Json positions(PositionSet s) { return s.positions(); }

Json family(const RecoveryFamily& f) {
  Json sets = Json::array();
  for (auto s : f.sets) sets.push_back(positions(s));
  return Json{{"bit", f.bit}, {"sets", sets}};
}

Json families(const std::vector<RecoveryFamily>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(family(f));
  return out;
}

Json triple(const std::array<PositionSet, 3>& t) {
  return Json::array({positions(t[0]), positions(t[1]), positions(t[2])});
}

Json code(const Code& c) {
  Json words = Json::array();
  for (const auto& w : c.words()) words.push_back(w.to_string());
  return Json{{"length", c.length()}, {"size", c.size()}, {"words", words}};
}

Json matrix(const BitMatrix& m) { return m.to_strings(); }

Json encoder(const Encoder& e) {
  Json j{{"k", e.k()}, {"n", e.n()}, {"linear", e.is_linear()}};
  if (e.is_linear()) {
    j["generator"] = matrix(e.generator());
  } else {
    Json table = Json::array();
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << e.k()); ++a) table.push_back(e.encode(a).to_string());
    j["table"] = table;
  }
  return j;
}

Json verification(const VerificationReport& r) {
  Json params{{"t", r.t}, {"w", r.width ? Json(*r.width) : Json(nullptr)}, {"mu", r.multiplicity}};
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) {
    Json sets = Json::array();
    for (auto s : o.sets) sets.push_back(positions(s));
    outcomes.push_back(Json{{"query", o.query},
                            {"status", to_string(o.status)},
                            {"sets", sets},
                            {"from_witness", o.from_witness}});
  }
  return Json{{"property", r.property},
              {"parameters", params},
              {"verdict", to_string(r.verdict)},
              {"complete", r.complete},
              {"outcomes", outcomes},
              {"stats", Json{{"nodes", r.nodes}, {"elapsed_ms", r.elapsed_ms}}}};
}

Json constructed(const ConstructedCode& c, const VerificationReport& check) {
  return Json{{"construction", c.construction},
              {"k", c.encoder.k()},
              {"n", c.encoder.n()},
              {"t", c.t},
              {"redundancy", c.redundancy},
              {"generator", matrix(c.encoder.generator())},
              {"witnesses", families(c.witnesses)},
              {"verification", verification(check)}};
}

Json mindist(const MinDistCheck& m, std::size_t t, std::size_t mu) {
  return Json{{"t", t},
              {"mu", mu},
              {"pir", to_string(m.pir)},
              {"vacuous", m.vacuous},
              {"min_distance", m.distance},
              {"bound", m.bound},
              {"ok", m.ok}};
}

Json design(const PackingDesign& d) {
  return Json{{"v", d.v}, {"blocksize", d.blocksize}, {"strength", d.strength}, {"lambda", d.lambda}, {"blocks", d.blocks}};
}

namespace {
std::string packing_status(PackingStatus s) {
  switch (s) {
    case PackingStatus::Found: return "found";
    case PackingStatus::ProvenImpossible: return "proven_impossible";
    case PackingStatus::Unknown: return "unknown";
  }
  return "?";
}
}  // namespace

Json packing_search(const PackingSearch& s, int v, int blocksize, int target) {
  Json j{{"v", v}, {"blocksize", blocksize}, {"target", target}, {"status", packing_status(s.status)}, {"nodes", s.nodes}};
  j["design"] = s.design ? design(*s.design) : Json(nullptr);
  return j;
}

Json complement(const ComplementCheck& c) {
  return Json{{"all_closed", c.all_closed},
              {"triples", c.triples},
              {"splittable_triples", c.splittable_triples},
              {"counterexample", c.counterexample ? triple(*c.counterexample) : Json(nullptr)},
              {"component_histogram", c.component_histogram},
              {"elapsed_ms", c.elapsed_ms}};
}

Json hamming_verdict(const HammingVerdict& v) {
  std::string verdict = !v.decided ? "undecided" : v.encoder_exists ? "encoder exists" : "no encoder exists";
  return Json{{"order", v.order},
              {"length", (1 << v.order) - 1},
              {"verdict", verdict},
              {"decided", v.decided},
              {"encoder_exists", v.encoder_exists},
              {"check", complement(v.check)}};
}

Json claims(int r, const std::vector<std::pair<std::array<PositionSet, 3>, ClaimReport>>& checked) {
  Json rows = Json::array();
  bool all = true;
  for (const auto& [t, c] : checked) {
    all = all && c.all_hold();
    Json row{{"triple", triple(t)},
             {"lines_meet_all_three", c.lines_meet_all_three},
             {"no_set_contains_line", c.no_set_contains_line},
             {"unused_is_subspace", c.unused_is_subspace},
             {"sets_are_cosets", c.sets_are_cosets},
             {"sizes_match", c.sizes_match}};
    if (c.claim1_violation) row["claim1_violation"] = c.claim1_violation->points;
    if (c.claim2_violation) row["claim2_violation"] = c.claim2_violation->points;
    rows.push_back(row);
  }
  return Json{{"order", r}, {"triples", checked.size()}, {"all_hold", all}, {"results", rows}};
}

Json a2(const A2Entry& e) {
  Json j{{"n", e.n},
         {"d", e.d},
         {"value", e.value},
         {"source", to_string(e.source)},
         {"exact", e.exact},
         {"nodes", e.nodes},
         {"elapsed_ms", e.elapsed_ms}};
  j["witness"] = e.witness ? code(*e.witness) : Json(nullptr);
  j["literature_flags"] = e.flag.empty() ? Json::array() : Json::array({e.flag});
  if (e.n == 11) j["literature_flags"].push_back(kCensusFlag);
  return j;
}

Json bound(const BoundReport& b) {
  Json chain = Json::array();
  for (const auto& s : b.chain) chain.push_back(Json{{"claim", s.claim}, {"source", s.source}, {"detail", s.detail}});
  return Json{{"k", b.k},
              {"t", b.t},
              {"lower_bound", b.lower_bound},
              {"upper_bound", b.upper_bound},
              {"exact", b.exact},
              {"chain", chain},
              {"literature_flags", b.literature_flags},
              {"elapsed_ms", b.elapsed_ms}};
}

Json optimal_table(std::size_t t, const std::vector<BoundReport>& exact,
                   const std::vector<std::pair<std::size_t, std::size_t>>& linear) {
  Json rows = Json::array();
  Json flags = Json::array();
  for (const auto& [k, n] : linear) {
    Json row{{"k", k}, {"n", n}, {"linear_length", n}};
    if (k <= exact.size()) {
      const auto& b = exact[k - 1];
      row["lower_bound"] = b.lower_bound;
      row["upper_bound"] = b.upper_bound;
      row["exact"] = b.exact;
      row["chain"] = bound(b)["chain"];
      for (const auto& f : b.literature_flags) flags.push_back(f);
    } else {
      // Beyond the exact regime only the linear construction is known.
      row["lower_bound"] = nullptr;
      row["upper_bound"] = n;
      row["exact"] = false;
    }
    rows.push_back(row);
  }
  return Json{{"t", t}, {"rows", rows}, {"literature_flags", flags}};
}

Json encoder_search(const EncoderSearch& s) {
  Json j{{"status", to_string(s.status)},
         {"candidate_functions", s.candidate_functions},
         {"triples", s.function_stats.triples},
         {"truncated_triples", s.function_stats.truncated},
         {"functions_complete", s.function_stats.complete},
         {"nodes", s.nodes},
         {"reason", s.reason},
         {"elapsed_ms", s.elapsed_ms}};
  j["encoder"] = s.encoder ? encoder(*s.encoder) : Json(nullptr);
  j["witnesses"] = families(s.witnesses);
  return j;
}

Json code_search(const CodeSearchOptions& o, const CodeSearchResult& r) {
  Json codes = Json::array();
  for (const auto& c : r.codes) codes.push_back(code(c));
  return Json{{"n", o.n},
              {"size", o.size},
              {"dmin", o.dmin},
              {"mode", to_string(o.mode)},
              {"seed", o.seed},
              {"classes", r.codes.size()},
              {"complete", r.complete},
              {"all_canonical", r.all_canonical},
              {"resumed", r.resumed},
              {"stats",
               Json{{"nodes", r.stats.nodes},
                    {"attempts", r.stats.attempts},
                    {"canonical_failures", r.stats.canonical_failures}}},
              {"codes", codes}};
}

Json hunt(const HuntReport& h) {
  Json logged = Json::array();
  for (const auto& e : h.logged) {
    logged.push_back(Json{{"attempt", e.attempt},
                          {"status", to_string(e.status)},
                          {"candidate_functions", e.candidate_functions},
                          {"words", e.words}});
  }
  return Json{{"n", h.n},
              {"size", h.size},
              {"codes_examined", h.codes_examined},
              {"encoders_found", h.encoders_found},
              {"proven_none", h.proven_none},
              {"unknown", h.unknown},
              {"resumed", h.resumed},
              {"note", "evidence only: no statement about codes outside the examined set"},
              {"literature_flags", h.n == 11 ? Json::array({kCensusFlag}) : Json::array()},
              {"logged", logged}};
}

namespace {

bool scalar_array(const Json& j) {
  for (const auto& x : j) {
    if (x.is_structured()) return false;
  }
  return true;
}

void text_value(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) {
      if (v.is_structured() && !(v.is_array() && scalar_array(v))) {
        out << pad << key << ":\n";
        text_value(out, v, indent + 1);
      } else {
        out << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object()) {
        out << pad << "-\n";
        text_value(out, v, indent + 1);
      } else {
        out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

void write_text(std::ostream& out, const Json& j) { text_value(out, j, 0); }

}  // namespace pirc::report
