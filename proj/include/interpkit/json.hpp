#ifndef INTERPKIT_JSON_HPP
#define INTERPKIT_JSON_HPP

// nlohmann::json from vendor/; the std::map-backed variant keeps object keys
// sorted, which the byte-deterministic file formats rely on.
#include <json.hpp>

#endif
