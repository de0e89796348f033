#include "spinq/catalog.hpp"

#include <mutex>

namespace spinq {

const Form& CatalogEntry::form(const std::string& name) const {
  auto it = forms.find(name);
  if (it == forms.end()) throw std::domain_error(id + ": unknown form " + name);
  return it->second;
}

const Scalar& CatalogEntry::scalar(const std::string& name) const {
  auto it = scalars.find(name);
  if (it == scalars.end()) throw std::domain_error(id + ": unknown scalar " + name);
  return it->second;
}

const VectorField& CatalogEntry::field(const std::string& name) const {
  auto it = fields.find(name);
  if (it == fields.end()) throw std::domain_error(id + ": unknown field " + name);
  return it->second;
}

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {
      "flat_T7",          "flat_T8",       "flat_R8",
      "nil_cy",           "balanced_b5t2_a", "balanced_b5t2_b",
      "balanced_second_iteration",          "round_s7_ambient",
      "s7_s1_product",    "bs_asd_bundle", "gh_link",
      "nk_link",          "bs_spinor_chart", "flat_r8_quotient",
      "gh_hopf"};
  return ids;
}

const CatalogEntry& load_entry(const std::string& id) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const CatalogEntry>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(id);
  if (it != cache.end()) return *it->second;

  CatalogEntry e;
  if (id == "flat_T7") e = build_flat_t7();
  else if (id == "flat_T8") e = build_flat_t8();
  else if (id == "flat_R8") e = build_flat_r8();
  else if (id == "nil_cy") e = build_nil_cy();
  else if (id == "balanced_b5t2_a") e = build_balanced(0);
  else if (id == "balanced_b5t2_b") e = build_balanced(1);
  else if (id == "balanced_second_iteration") e = build_balanced(2);
  else if (id == "round_s7_ambient") e = build_round_s7_ambient();
  else if (id == "s7_s1_product") e = build_s7_s1_product();
  else if (id == "bs_asd_bundle") e = build_bs_asd_bundle();
  else if (id == "gh_link") e = build_gh_link();
  else if (id == "nk_link") e = build_nk_link();
  else if (id == "bs_spinor_chart") e = build_bs_spinor_chart();
  else if (id == "flat_r8_quotient") e = build_flat_r8_quotient();
  else if (id == "gh_hopf") e = build_gh_hopf();
  else throw std::domain_error("catalog: unknown entry " + id);

  // load-time self check: the declared structure is integrable
  auto rep = e.algebra->check_integrability(e.points);
  if (!rep.exact_zero && rep.max_numeric_residual > 1e-9)
    throw std::domain_error("catalog: " + id + " fails its d^2 = 0 self check, residual " +
                            std::to_string(rep.max_numeric_residual));

  auto stored = std::make_shared<const CatalogEntry>(std::move(e));
  cache[id] = stored;
  return *stored;
}

}  // namespace spinq
