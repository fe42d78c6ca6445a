#pragma once

#include <json.hpp>
#include <string>

#include "hambound/diagnostics.hpp"
#include "hambound/oracle.hpp"

namespace hambound {

// Rationals travel as "p/q" strings (never floats); certified values as
// {"lo": "p/q", "hi": "p/q"}.

Rat parse_rat(const std::string& s);  // "p/q" or "p"; throws ParamError
std::string render_rat(const Rat& r);

nlohmann::json render_iv(const IV& v);
IV parse_iv(const nlohmann::json& j);

nlohmann::json render_node(const NodeVal& z);
nlohmann::json render_rule(const QuadratureRule& rule);

nlohmann::json render(const Conditions& c);
nlohmann::json render(const BoundReport& r);
nlohmann::json render(const KSelection& sel);
nlohmann::json render(const EnergyReport& r);
nlohmann::json render(const DistanceDistribution& dd);
nlohmann::json render(const TestFunctionReport& r);
nlohmann::json render(const ImprovingPolynomial& ip);
nlohmann::json render(const RefineReport& r);
nlohmann::json render(const MaxCodeResult& r);
nlohmann::json render(const EnergyExtrema& r);

}  // namespace hambound
