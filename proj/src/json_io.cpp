#include "hambound/json_io.hpp"

namespace hambound {

using nlohmann::json;

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ParamError("empty rational");
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') pos = 1;
  bool digits = false, slash = false;
  for (std::size_t i = pos; i < s.size(); ++i) {
    if (s[i] == '/') {
      if (slash || !digits) throw ParamError("bad rational: " + s);
      slash = true;
      digits = false;
    } else if (s[i] >= '0' && s[i] <= '9') {
      digits = true;
    } else {
      throw ParamError("bad rational: " + s);
    }
  }
  if (!digits) throw ParamError("bad rational: " + s);
  Rat r;
  try {
    r = Rat(s, 10);
  } catch (const std::invalid_argument&) {
    throw ParamError("bad rational: " + s);
  }
  if (r.get_den() == 0) throw ParamError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string render_rat(const Rat& r) { return rat_to_string(r); }

json render_iv(const IV& v) {
  return json{{"lo", render_rat(v.lo)}, {"hi", render_rat(v.hi)}};
}

IV parse_iv(const json& j) {
  return IV(parse_rat(j.at("lo").get<std::string>()),
            parse_rat(j.at("hi").get<std::string>()));
}

json render_node(const NodeVal& z) {
  if (z.is_exact()) return json{{"value", render_rat(*z.exact_value)}};
  return render_iv(z.iv());
}

json render_rule(const QuadratureRule& rule) {
  json nodes = json::array(), weights = json::array();
  for (const auto& nd : rule.nodes) nodes.push_back(render_node(nd));
  for (std::size_t i = 0; i < rule.weights.size(); ++i) {
    if (rule.weights_exact[i])
      weights.push_back(json{{"value", render_rat(*rule.weights_exact[i])}});
    else
      weights.push_back(render_iv(rule.weights[i]));
  }
  return json{{"k", rule.k},
              {"ell", render_rat(rule.ell)},
              {"s", render_rat(rule.s)},
              {"nodes", nodes},
              {"weights", weights},
              {"weight_at_one", render_rat(rule.weight_at_one)}};
}

json render(const Conditions& c) {
  return json{{"l_s_range", c.l_s_range},
              {"ell_condition", c.ell_condition},
              {"ell_location", c.ell_location},
              {"s_location", c.s_location},
              {"s_condition", c.s_condition},
              {"krein", c.krein},
              {"admissible", c.admissible()}};
}

namespace {

json space_json(const HammingSpace& space) {
  return json{{"n", space.n}, {"q", space.q}};
}

json rat_list(const std::vector<Rat>& xs) {
  json a = json::array();
  for (const Rat& x : xs) a.push_back(render_rat(x));
  return a;
}

}  // namespace

json render(const BoundReport& r) {
  return json{{"space", space_json(r.space)},
              {"ell", render_rat(r.ell)},
              {"s", render_rat(r.s)},
              {"k", r.k},
              {"L", render_rat(r.L)},
              {"L_floor", r.L_floor.get_str()},
              {"L_explicit", render_rat(r.L_explicit)},
              {"explicit_agrees", r.explicit_agrees},
              {"conditions", render(r.cond)},
              {"positivity_certificate", r.positivity_certificate},
              {"f_krawtchouk", rat_list(r.f_kraw)},
              {"rule", render_rule(r.rule)}};
}

json render(const KSelection& sel) {
  json rej = json::array();
  for (const auto& [k, why] : sel.rejected)
    rej.push_back(json{{"k", k}, {"reason", why}});
  json out{{"valid_k", sel.valid}, {"rejected", rej}};
  if (sel.best) out["best_k"] = *sel.best;
  if (sel.report) out["report"] = render(*sel.report);
  return out;
}

json render(const EnergyReport& r) {
  json out{{"space", space_json(r.space)},
           {"ell", render_rat(r.ell)},
           {"M", render_rat(r.M)},
           {"k", r.k},
           {"potential", r.potential},
           {"s_exact", r.s_exact},
           {"notes", r.notes}};
  if (r.s) out["s"] = render_rat(*r.s);
  if (r.lower) out["lower"] = render_iv(*r.lower);
  if (r.upper) out["upper"] = render_iv(*r.upper);
  if (r.lambda) out["lambda"] = render_iv(*r.lambda);
  if (r.s_solved) out["s_solved"] = render_iv(*r.s_solved);
  if (r.rule) out["rule"] = render_rule(*r.rule);
  return out;
}

json render(const DistanceDistribution& dd) {
  json entries = json::array();
  for (std::size_t i = 0; i < dd.counts.size(); ++i) {
    json e{{"node", render_node(dd.rep.rule.nodes[i])},
           {"integral", dd.integral[i]},
           {"on_grid", dd.on_grid[i]}};
    if (dd.counts_exact[i])
      e["count"] = json{{"value", render_rat(*dd.counts_exact[i])}};
    else
      e["count"] = render_iv(dd.counts[i]);
    entries.push_back(std::move(e));
  }
  return json{{"space", space_json(dd.rep.space)},
              {"ell", render_rat(dd.rep.ell)},
              {"s", render_rat(dd.rep.s)},
              {"k", dd.rep.k},
              {"M", render_rat(dd.M)},
              {"entries", entries},
              {"attainable_profile", dd.attainable_profile},
              {"notes", dd.notes}};
}

json render(const TestFunctionReport& r) {
  json vals = json::array();
  for (const auto& v : r.values)
    vals.push_back(json{{"j", v.j},
                        {"value", render_iv(v.value)},
                        {"direct", render_iv(v.direct)},
                        {"power_sum", render_iv(v.power_sum)}});
  json out{{"space", space_json(r.space)},
           {"ell", render_rat(r.ell)},
           {"s", render_rat(r.s)},
           {"k", r.k},
           {"j_max", r.j_max},
           {"values", vals},
           {"indeterminate", r.indeterminate},
           {"notes", r.notes}};
  if (r.first_negative) out["first_negative"] = *r.first_negative;
  return out;
}

json render(const ImprovingPolynomial& ip) {
  return json{{"j", ip.j},
              {"c", render_rat(ip.c)},
              {"v_krawtchouk", rat_list(ip.v_kraw)},
              {"v0", render_rat(ip.v0)},
              {"v1", render_rat(ip.v1)},
              {"improved_bound", render_rat(ip.improved)},
              {"original_bound", render_rat(ip.original)}};
}

json render(const RefineReport& r) {
  json out{{"space", space_json(r.rep.space)},
           {"ell", render_rat(r.rep.ell)},
           {"s", render_rat(r.rep.s)},
           {"k", r.rep.k},
           {"L", render_rat(r.rep.L)},
           {"refined", r.refined},
           {"f_krawtchouk", rat_list(r.f_kraw)},
           {"f_feasible", r.f_feasible},
           {"f_grid_ok", r.f_grid_ok},
           {"g_built", r.g_built},
           {"g_feasible", r.g_feasible},
           {"g_grid_ok", r.g_grid_ok},
           {"alt_nodes_used", r.alt_nodes_used},
           {"notes", r.notes}};
  if (r.f_violation) out["f_violation"] = *r.f_violation;
  if (r.g_violation) out["g_violation"] = *r.g_violation;
  if (r.L_ref) out["L_ref"] = render_rat(*r.L_ref);
  if (r.energy_ref) out["energy_ref"] = render_iv(*r.energy_ref);
  return out;
}

json render(const MaxCodeResult& r) {
  return json{{"size", r.size},
              {"witness", code_to_text(r.witness)},
              {"nodes_visited", r.nodes_visited}};
}

json render(const EnergyExtrema& r) {
  json out{{"feasible", r.feasible}, {"codes_enumerated", r.codes_enumerated}};
  if (r.min_energy) out["min_energy"] = render_iv(*r.min_energy);
  if (r.max_energy) out["max_energy"] = render_iv(*r.max_energy);
  if (r.min_exact) out["min_exact"] = render_rat(*r.min_exact);
  if (r.max_exact) out["max_exact"] = render_rat(*r.max_exact);
  if (r.feasible) {
    out["argmin"] = code_to_text(r.argmin);
    out["argmax"] = code_to_text(r.argmax);
  }
  return out;
}

}  // namespace hambound
