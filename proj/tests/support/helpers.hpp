#pragma once

#include <ginijel/ginijel.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace testing_support {

inline ginijel::Dataset to_dataset(const oracle::Sample& s) {
  return ginijel::Dataset::from_codes(s.x, s.y);
}

inline ginijel::Dataset make(std::vector<double> x, const std::vector<std::string>& y) {
  std::vector<ginijel::Record> r;
  for (std::size_t i = 0; i < x.size(); ++i) r.push_back({x[i], y[i]});
  return ginijel::Dataset::from_pairs(r);
}

// Minimal reader for the bundled iris file; the CLI's parser is tested
// separately and is not used here.
inline ginijel::Dataset load_iris(const std::string& column = "sepal_length") {
  std::ifstream in(std::string(GINIJEL_DATA_DIR) + "/iris.csv");
  if (!in) throw std::runtime_error("iris.csv not found");
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    std::string h;
    while (std::getline(hs, h, ',')) header.push_back(h);
  }
  std::size_t xc = 0, yc = 0;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) xc = i;
    if (header[i] == "species") yc = i;
  }
  std::vector<ginijel::Record> recs;
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::vector<std::string> f;
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    recs.push_back({std::stod(f[xc]), f[yc]});
  }
  return ginijel::Dataset::from_pairs(recs);
}

template <typename F>
ginijel::Errc error_code_of(F&& f) {
  try {
    f();
  } catch (const ginijel::Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected ginijel::Error");
}

}  // namespace testing_support
