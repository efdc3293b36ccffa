#include "shiftpd/serialize.hpp"

#include <map>

#include "shiftpd/errors.hpp"

namespace shiftpd {

namespace {

std::string q_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

Json to_json(const MeasureResult& r) {
  Json j;
  j["measure"] = r.measure;
  j["k"] = r.k;
  j["l"] = r.l;
  j["n0"] = r.n0;
  j["dimension"] = r.dimension;
  j["generators"] = r.generators;
  j["ambient"] = r.ambient.get_str();
  j["field"] = r.field.name();
  if (r.inhomogeneous) j["inhomogeneous"] = true;
  if (r.lower_bound) j["lowerBound"] = true;
  return j;
}

Json to_json(const ResidueValue& r) {
  return Json{{"value", q_str(r.value)}, {"minimizers", r.minimizers}};
}

Json to_json(const DegreeSequence& ds) {
  return Json{{"degrees", ds.degrees}, {"suffixes", ds.suffixes}, {"d", ds.total()}};
}

Json to_json(const UptKTrace& tr) {
  Json b0 = Json::array();
  Json b1 = Json::array();
  for (const auto& v : tr.b0) b0.push_back(q_str(v));
  for (const auto& v : tr.b1) b1.push_back(q_str(v));
  return Json{{"d", tr.d}, {"m", tr.m}, {"J", tr.J}, {"a", tr.a}, {"b0", b0},
              {"b1", b1}, {"alpha", q_str(tr.alpha)}, {"k", tr.k}};
}

Json to_json(const LowDepthParams& p) {
  return Json{{"d", p.d}, {"delta", p.delta}, {"tau", p.tau}, {"alpha", q_str(p.alpha)},
              {"k", p.k}, {"degenerate", p.degenerate}};
}

Json to_json(const ProductDecomposition& pd) {
  Json summands = Json::array();
  for (const auto& s : pd.summands) {
    Json factors = Json::array();
    for (const auto& q : s.factors) factors.push_back(format_polynomial(q));
    summands.push_back(Json{{"degrees", s.degrees}, {"factors", factors}});
  }
  return Json{{"s", pd.s()},
              {"sourceSize", pd.source_size},
              {"normalizedSize", pd.normalized_size},
              {"productDepth", pd.product_depth},
              {"summands", summands}};
}

Json to_json(const LdsReport& r) {
  Json per = Json::array();
  for (const auto& v : r.summands) {
    Json e{{"linearFactors", v.linear_factors}, {"manyLinear", v.many_linear}, {"holds", v.holds()}};
    e["delta"] = v.delta ? Json(*v.delta) : Json(nullptr);
    per.push_back(e);
  }
  return Json{{"holds", r.holds}, {"summands", per}};
}

Json to_json(const ResidueFloorReport& r) {
  Json res = Json::array();
  for (const auto& v : r.residues) res.push_back(q_str(v));
  return Json{{"holds", r.holds}, {"residues", res}, {"minimum", r.minimum ? Json(q_str(*r.minimum)) : Json(nullptr)}};
}

Json to_json(const NwCountReport& r) {
  Json chi = Json::array();
  for (const auto& c : r.chi) chi.push_back(c.get_str());
  Json j{{"q", r.q},
         {"d", r.d},
         {"k", r.k},
         {"l", r.l},
         {"tH", r.t_h.get_str()},
         {"sumTH", r.sum_t_h.get_str()},
         {"chi", chi},
         {"pairBound", r.pair_bound.get_str()},
         {"pairBoundSimple", r.pair_bound_simple.get_str()},
         {"ieLower", r.ie_lower.get_str()},
         {"ieLowerSimple", r.ie_lower_simple.get_str()},
         {"chiDecreasingFromZero", r.chi_decreasing_from_zero}};
  if (r.direct_sum_t_h) j["directSumTH"] = r.direct_sum_t_h->get_str();
  if (r.direct_pairs) j["directPairs"] = r.direct_pairs->get_str();
  if (r.direct_t) j["directT"] = r.direct_t->get_str();
  return j;
}

Json to_json(const Word& w) { return Json{{"h", w.h}, {"weights", w.weights}, {"n", w.variable_count()}}; }

Json formula_to_json(const Formula& f) {
  Json nodes = Json::array();
  for (std::size_t id = 0; id < f.size(); ++id) {
    const Gate& g = f.gate(id);
    Json n;
    n["id"] = id;
    if (g.op == GateOp::Input) {
      n["op"] = "in";
      n["var"] = g.var;
    } else {
      n["op"] = g.op == GateOp::Add ? "add" : "mul";
      Json kids = Json::array();
      for (const auto& e : g.children) kids.push_back(Json{{"id", e.child}, {"coeff", e.coeff.str()}});
      n["children"] = kids;
    }
    nodes.push_back(n);
  }
  return Json{{"nvars", f.nvars()}, {"root", f.root()}, {"nodes", nodes}};
}

Formula formula_from_json(const Json& j) {
  try {
    const auto nvars = j.at("nvars").get<std::uint32_t>();
    const auto& nodes = j.at("nodes");
    std::map<std::int64_t, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto id = nodes[i].at("id").get<std::int64_t>();
      if (!index.emplace(id, i).second) throw ParseError("duplicate node id " + std::to_string(id));
    }
    auto lookup = [&](std::int64_t id) {
      auto it = index.find(id);
      if (it == index.end()) throw ParseError("unknown node id " + std::to_string(id));
      return it->second;
    };
    std::vector<Gate> gates(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      const auto op = n.at("op").get<std::string>();
      Gate& g = gates[i];
      if (op == "in") {
        g.op = GateOp::Input;
        g.var = n.at("var").get<std::uint32_t>();
        continue;
      }
      if (op == "add") g.op = GateOp::Add;
      else if (op == "mul") g.op = GateOp::Mul;
      else throw ParseError("unknown op '" + op + "'");
      for (const auto& c : n.at("children")) {
        Edge e;
        e.child = lookup(c.at("id").get<std::int64_t>());
        if (c.contains("coeff")) {
          const auto& cj = c.at("coeff");
          e.coeff = cj.is_string() ? Scalar::parse(cj.get<std::string>()) : Scalar(cj.get<long>());
        }
        g.children.push_back(e);
      }
    }
    return Formula(nvars, std::move(gates), lookup(j.at("root").get<std::int64_t>()));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("formula JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace shiftpd
