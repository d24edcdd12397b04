#include "rankgap/tensor_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rankgap::io {

using nlohmann::json;

std::string write_tensor(const DenseTensor& t, TensorLayout layout) {
  json doc;
  doc["shape"] = t.shape();
  if (layout == TensorLayout::kDense) {
    json entries = json::array();
    for (const auto& q : t.entries()) entries.push_back(to_string(q));
    doc["entries"] = std::move(entries);
  } else {
    json nonzeros = json::array();
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      if (sgn(t[flat]) == 0) continue;
      nonzeros.push_back(
          {{"index", t.multi_index(flat)}, {"value", to_string(t[flat])}});
    }
    doc["nonzeros"] = std::move(nonzeros);
  }
  return doc.dump() + "\n";
}

namespace {

Rational parse_value(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw std::invalid_argument(
      "tensor entries must be integers or \"p/q\" strings");
}

}  // namespace

DenseTensor read_tensor(const std::string& text, const SizeBudget& budget) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed tensor document: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("shape") || !doc["shape"].is_array()) {
    throw std::invalid_argument("tensor document lacks a 'shape' array");
  }
  std::vector<std::size_t> shape;
  for (const auto& dim : doc["shape"]) {
    if (!dim.is_number_integer() || dim.get<long>() < 1) {
      throw std::invalid_argument("tensor shape entries must be positive");
    }
    shape.push_back(dim.get<std::size_t>());
  }
  checked_volume(shape, budget.max_tensor_entries);

  if (doc.contains("entries")) {
    std::vector<Rational> entries;
    for (const auto& v : doc["entries"]) entries.push_back(parse_value(v));
    return DenseTensor(std::move(shape), std::move(entries));
  }
  if (doc.contains("nonzeros")) {
    DenseTensor out(std::move(shape));
    for (const auto& nz : doc["nonzeros"]) {
      const auto index = nz.at("index").get<std::vector<std::size_t>>();
      out.at(index) = parse_value(nz.at("value"));
    }
    return out;
  }
  throw std::invalid_argument(
      "tensor document needs 'entries' or 'nonzeros'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

void save_tensor(const std::string& path, const DenseTensor& t,
                 TensorLayout layout) {
  write_file(path, write_tensor(t, layout));
}

DenseTensor load_tensor(const std::string& path, const SizeBudget& budget) {
  return read_tensor(read_file(path), budget);
}

}  // namespace rankgap::io
