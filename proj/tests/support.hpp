#pragma once

#include <string>

#include "shiftconj/io.hpp"

#ifndef SHIFTCONJ_FIXTURES
#error "SHIFTCONJ_FIXTURES must point at tests/fixtures"
#endif

namespace fixtures {

inline std::string path(const std::string& name) {
  return std::string(SHIFTCONJ_FIXTURES) + "/" + name;
}

inline shiftconj::GraphFile graph(const std::string& name) {
  return shiftconj::parse_graph(shiftconj::read_file(path(name)));
}

inline shiftconj::ForestPair element(const std::string& name, const shiftconj::GraphFile& gf) {
  return shiftconj::parse_element(shiftconj::read_file(path(name)), gf.graph, gf.base);
}

}  // namespace fixtures
