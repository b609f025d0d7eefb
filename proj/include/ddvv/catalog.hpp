#pragma once

#include <string>
#include <vector>

#include "ddvv/construction.hpp"
#include "ddvv/surface.hpp"

namespace ddvv {

struct CatalogEntry {
  HolomorphicCurve curve;
  GridSpec default_grid;  // window chosen to stay clear of degenerate points
  std::string note;
};

const std::vector<CatalogEntry>& catalog();
// nullptr when the name is unknown
const CatalogEntry* find_catalog(const std::string& name);

}  // namespace ddvv
