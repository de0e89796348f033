#include "spinq/json_io.hpp"

#include <json.hpp>

namespace spinq {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json form_terms(const Form& f) {
  ordered_json arr = ordered_json::array();
  for (const auto& [idx, c] : f.coefficients()) {
    ordered_json term = ordered_json::array();
    term.push_back(c.prefix_str());
    term.push_back(idx);
    arr.push_back(term);
  }
  return arr;
}

Form parse_form_terms(const AlgebraPtr& alg, const json& arr, int degree) {
  Form f = Form::zero(alg, degree);
  for (const auto& term : arr) {
    if (!term.is_array() || term.size() != 2)
      throw std::runtime_error("json chart: malformed form term");
    Scalar c = parse_scalar(term[0].get<std::string>());
    Indices idx = term[1].get<Indices>();
    if (static_cast<int>(idx.size()) != degree)
      throw std::runtime_error("json chart: term degree mismatch");
    f += Form::term(alg, idx, c);
  }
  return f;
}

}  // namespace

std::string algebra_to_json(const FrameAlgebra& alg) {
  ordered_json j;
  j["dim"] = alg.dim();
  j["coframe"] = alg.coframe_names();
  Indices orient(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) orient[i] = i + 1;
  j["orientation"] = orient;
  ordered_json structure = ordered_json::object();
  for (int i = 1; i <= alg.dim(); ++i) {
    const Form& de = alg.structure(i);
    if (!de.is_zero()) structure[alg.coframe_names()[i - 1]] = form_terms(de);
  }
  j["structure"] = structure;
  ordered_json gens = ordered_json::object();
  for (const auto& g : alg.generators()) {
    ordered_json gj;
    gj["positive"] = g.positive;
    gj["d"] = form_terms(g.differential);
    gens[g.name] = gj;
  }
  j["generators"] = gens;
  return j.dump(2) + "\n";
}

std::shared_ptr<FrameAlgebra> algebra_from_json(const std::string& text) {
  json j = json::parse(text);
  int dim = j.at("dim").get<int>();
  std::vector<std::string> names = j.at("coframe").get<std::vector<std::string>>();
  if (j.contains("orientation")) {
    Indices orient = j.at("orientation").get<Indices>();
    for (int i = 0; i < dim; ++i)
      if (orient[i] != i + 1)
        throw std::runtime_error("json chart: only the standard orientation order is supported");
  }
  auto alg = FrameAlgebra::create(dim, names);
  if (j.contains("structure")) {
    for (auto it = j["structure"].begin(); it != j["structure"].end(); ++it) {
      int index = -1;
      for (int i = 0; i < dim; ++i)
        if (names[i] == it.key()) index = i + 1;
      if (index < 0) throw std::runtime_error("json chart: unknown coframe name " + it.key());
      alg->declare_structure(index, parse_form_terms(alg, it.value(), 2));
    }
  }
  if (j.contains("generators")) {
    for (auto it = j["generators"].begin(); it != j["generators"].end(); ++it) {
      const json& gj = it.value();
      bool positive = gj.value("positive", false);
      Form dg = gj.contains("d") ? parse_form_terms(alg, gj["d"], 1) : Form::zero(alg, 1);
      alg->declare_generator(it.key(), positive, dg);
    }
  }
  return alg;
}

std::string form_to_json(const Form& f) {
  ordered_json j;
  j["degree"] = f.degree();
  j["terms"] = form_terms(f);
  return j.dump(2) + "\n";
}

Form form_from_json(const AlgebraPtr& alg, const std::string& text) {
  json j = json::parse(text);
  return parse_form_terms(alg, j.at("terms"), j.at("degree").get<int>());
}

}  // namespace spinq
