#include "perihack/catalog.hpp"

namespace perihack {

namespace detail {
extern const std::string_view kDefaultCatalogJson;
}

std::string_view default_catalog_text() { return detail::kDefaultCatalogJson; }

const ScenarioCatalog& default_catalog() {
  static const ScenarioCatalog catalog = load_catalog(default_catalog_text());
  return catalog;
}

}  // namespace perihack
