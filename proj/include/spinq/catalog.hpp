#pragma once

#include <functional>
#include <optional>

#include "spinq/quotient.hpp"

namespace spinq {

// A named check carried by a catalog entry; the suite named here must run it.
struct Claim {
  std::string suite;
  std::string name;
  std::function<Residual()> run;
};

// Built-in chart with its structures, sample points and the claims it
// certifies. Entries are immutable once constructed.
struct CatalogEntry {
  std::string id;
  std::string description;
  AlgebraPtr algebra;  // primary chart
  std::vector<Point> points;
  bool exact_capable = false;  // claims reduce inside the exact fragment

  std::map<std::string, Form> forms;
  std::map<std::string, Scalar> scalars;
  std::map<std::string, VectorField> fields;

  std::shared_ptr<const G2Structure> g2;
  std::shared_ptr<const Spin7Structure> spin7;
  std::shared_ptr<const QuotientData> quotient;
  std::shared_ptr<const PointwiseQuotient> pointwise;

  std::vector<Claim> claims;

  const Form& form(const std::string& name) const;
  const Scalar& scalar(const std::string& name) const;
  const VectorField& field(const std::string& name) const;
};

const std::vector<std::string>& catalog_ids();
// loads (and caches) an entry; the self-check d^2 = 0 runs at load
const CatalogEntry& load_entry(const std::string& id);

// entry builders, one per family (internal, exposed for tests)
CatalogEntry build_flat_t7();
CatalogEntry build_flat_t8();
CatalogEntry build_flat_r8();
CatalogEntry build_nil_cy();
CatalogEntry build_balanced(int variant);  // 0: _a, 1: _b, 2: second iteration
CatalogEntry build_round_s7_ambient();
CatalogEntry build_s7_s1_product();
CatalogEntry build_bs_asd_bundle();
CatalogEntry build_gh_link();
CatalogEntry build_nk_link();
CatalogEntry build_bs_spinor_chart();
CatalogEntry build_flat_r8_quotient();
CatalogEntry build_gh_hopf();

}  // namespace spinq
