#include "chq/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chq {

namespace {

SubsetIndex subset_from_label(const std::string& label, int n) {
  if (label.empty()) return 0;
  SubsetIndex a = 0;
  std::stringstream ss(label);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const int i = std::stoi(tok);
    if (i < 1 || i > n)
      throw std::invalid_argument("subset member out of range: " + tok);
    a |= SubsetIndex{1} << (i - 1);
  }
  return a;
}

Json set_function_values(const std::vector<double>& vals) {
  Json values = Json::object();
  for (SubsetIndex a = 0; a < vals.size(); ++a)
    values[subset_label(a)] = vals[a];
  return values;
}

}  // namespace

Json capacity_to_json(const Capacity& c) {
  return Json{{"n", c.n},
              {"kind", "capacity"},
              {"values", set_function_values(c.values)}};
}

Json mobius_to_json(const MobiusRep& m) {
  return Json{{"n", m.n},
              {"kind", "mobius"},
              {"values", set_function_values(m.coeffs)}};
}

SetFunctionFile set_function_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  if (n < 1 || n > kMaxCriteria)
    throw std::invalid_argument("set function: n out of range");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "capacity" && kind != "mobius")
    throw std::invalid_argument("set function: kind must be capacity|mobius");
  const SubsetIndex size = SubsetIndex{1} << n;
  std::vector<double> vals(size, 0.0);
  std::vector<char> present(size, 0);
  for (const auto& [key, value] : j.at("values").items()) {
    const SubsetIndex a = subset_from_label(key, n);
    vals[a] = value.get<double>();
    present[a] = 1;
  }
  if (kind == "capacity") {
    for (SubsetIndex a = 0; a < size; ++a)
      if (!present[a])
        throw std::invalid_argument("capacity: missing subset {" +
                                    subset_label(a) + "}");
    return {kind, mobius_of(make_capacity(n, std::move(vals)))};
  }
  return {kind, make_mobius(n, std::move(vals))};
}

Json model_file_to_json(const ModelFile& mf) {
  Json criteria = Json::array();
  for (const auto& s : mf.model.scales) {
    Json c{{"name", s.name}, {"levels", s.levels}};
    if (s.values) c["values"] = *s.values;
    criteria.push_back(std::move(c));
  }
  Json out{{"criteria", std::move(criteria)}};
  if (mf.mobius) out["capacity"] = mobius_to_json(*mf.mobius);
  return out;
}

ModelFile model_file_from_json(const Json& j) {
  ModelFile mf;
  if (!j.at("criteria").is_array() || j.at("criteria").empty())
    throw std::invalid_argument("model: criteria must be a non-empty array");
  for (const auto& c : j.at("criteria")) {
    CriterionScale s;
    s.name = c.value("name", "c" + std::to_string(mf.model.scales.size() + 1));
    s.levels = c.at("levels").get<std::vector<std::string>>();
    if (c.contains("values"))
      s.values = c.at("values").get<std::vector<double>>();
    mf.model.scales.push_back(std::move(s));
  }
  for (const auto& iss : validate_model(mf.model))
    if (iss.fatal)
      throw std::invalid_argument("model: " + iss.what +
                                  (iss.criterion >= 0
                                       ? " (criterion " +
                                             std::to_string(iss.criterion + 1) + ")"
                                       : ""));
  if (j.contains("capacity")) {
    auto sf = set_function_from_json(j.at("capacity"));
    if (sf.mobius.n != mf.model.n())
      throw std::invalid_argument("model: capacity n != criteria count");
    mf.mobius = std::move(sf.mobius);
  }
  return mf;
}

Json prefs_to_json(const PreferenceStructure& p) {
  Json alts = Json::array();
  for (const auto& a : p.alternatives) alts.push_back(a.coords);
  Json out{{"kind", p.kind == PrefKind::kRanked ? "ranked" : "pairs"},
           {"alternatives", std::move(alts)}};
  if (p.kind == PrefKind::kRanked) {
    out["ranks"] = p.ranks;
  } else {
    Json pairs = Json::array();
    for (const auto& s : p.pairs)
      pairs.push_back(
          {{"better", s.better}, {"worse", s.worse}, {"strict", s.strict}});
    out["pairs"] = std::move(pairs);
  }
  return out;
}

PreferenceStructure prefs_from_json(const Json& j) {
  PreferenceStructure p;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ranked")
    p.kind = PrefKind::kRanked;
  else if (kind == "pairs")
    p.kind = PrefKind::kPairs;
  else
    throw std::invalid_argument("preferences: kind must be ranked|pairs");
  for (const auto& a : j.at("alternatives"))
    p.alternatives.push_back({a.get<std::vector<int>>()});
  if (p.kind == PrefKind::kRanked) {
    p.ranks = j.at("ranks").get<std::vector<int>>();
    if (p.ranks.size() != p.alternatives.size())
      throw std::invalid_argument("preferences: ranks length mismatch");
  } else {
    for (const auto& s : j.at("pairs")) {
      PairStatement st;
      st.better = s.at("better").get<int>();
      st.worse = s.at("worse").get<int>();
      st.strict = s.value("strict", true);
      const int na = static_cast<int>(p.alternatives.size());
      if (st.better < 0 || st.better >= na || st.worse < 0 || st.worse >= na)
        throw std::invalid_argument("preferences: pair index out of range");
      p.pairs.push_back(st);
    }
  }
  return p;
}

Json report_to_json(const AxiomReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    Json points = Json::array();
    for (const auto& p : w.points) points.push_back(p);
    witnesses.push_back({{"what", w.what}, {"points", std::move(points)}});
  }
  Json out{{"axiom", r.axiom},
           {"status", to_string(r.status)},
           {"witnesses", std::move(witnesses)},
           {"checked", r.checked},
           {"violated", r.violated},
           {"coverage", r.coverage}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

Json fit_result_to_json(const FitResult& r) {
  Json out{{"status", r.status == FitStatus::kFeasible ? "FEASIBLE" : "INFEASIBLE"},
           {"max_violation", r.max_violation},
           {"min_slack", r.min_slack},
           {"active_constraints", r.active_constraints}};
  if (r.status == FitStatus::kFeasible) {
    out["mobius"] = mobius_to_json(r.mobius);
    out["capacity"] = capacity_to_json(capacity_of(r.mobius));
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace chq
