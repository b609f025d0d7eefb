#include "ddvv/catalog.hpp"

namespace ddvv {

namespace {

CatalogEntry make_entry(const std::string& name, int n,
                        std::vector<std::string> comps, double u0, double u1,
                        double v0, double v1, const std::string& note) {
  CatalogEntry e;
  e.curve.n = n;
  e.curve.name = name;
  for (const std::string& s : comps) e.curve.components.push_back(parse(s));
  e.default_grid.n = n;
  e.default_grid.u_min = u0;
  e.default_grid.u_max = u1;
  e.default_grid.v_min = v0;
  e.default_grid.v_max = v1;
  if (n == 3) {
    e.default_grid.nu = e.default_grid.nv = 10;
    e.default_grid.ntheta = 8;
  } else {
    e.default_grid.nu = e.default_grid.nv = 6;
    // even count: odd half-step grids over [0, 2pi) place a sample exactly at
    // the chart pole theta_1 = pi, where the later fiber angles degenerate
    e.default_grid.ntheta = 4;
  }
  e.note = note;
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> cat;

  cat.push_back(make_entry(
      "enneper-pair", 3,
      {"z/2 - z^3/6", "i*(z/2 + z^3/6)", "z^2/2", "z^2/2", "i*z^2/2"},
      0.6, 1.2, 0.4, 1.0,
      "Enneper-type base plus an isotropic pair; quadric value -z^4/12"));

  cat.push_back(make_entry(
      "helicoid-pair", 3,
      {"cos(z)", "sin(z)", "-i*z", "exp(z)", "i*exp(z)"},
      0.15, 0.85, 0.1, 0.6,
      "catenoid/helicoid base plus an exponential pair; quadric value 1 - z^2"));

  cat.push_back(make_entry(
      "null-exp", 3,
      {"exp(z)", "i*exp(z)", "exp(-z)", "i*exp(-z)", "0"},
      0.2, 0.8, 0.15, 0.75,
      "lies in the null quadric (value 0); inversion image is austere"));

  cat.push_back(make_entry(
      "enneper-pair-4", 4,
      {"z/2 - z^3/6", "i*(z/2 + z^3/6)", "z^2/2", "z^2/2", "i*z^2/2", "0"},
      0.6, 1.2, 0.4, 1.0,
      "n = 4 variant padded with a vanishing isotropic component"));

  cat.push_back(make_entry(
      "helicoid-pair-4", 4,
      {"cos(z)", "sin(z)", "-i*z", "exp(z)", "i*exp(z)", "0"},
      0.15, 0.85, 0.1, 0.6,
      "n = 4 variant padded with a vanishing isotropic component"));

  cat.push_back(make_entry(
      "null-exp-4", 4,
      {"exp(z)", "i*exp(z)", "exp(-z)", "i*exp(-z)", "0", "0"},
      0.2, 0.8, 0.15, 0.75,
      "n = 4 variant padded with a vanishing isotropic component"));

  return cat;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> cat = build_catalog();
  return cat;
}

const CatalogEntry* find_catalog(const std::string& name) {
  for (const CatalogEntry& e : catalog())
    if (e.curve.name == name) return &e;
  return nullptr;
}

}  // namespace ddvv
