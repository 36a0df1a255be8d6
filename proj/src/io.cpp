#include "smalleig/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "smalleig/errors.hpp"

namespace smalleig {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

json node_to_json(const DeflationNode& node) {
  json j;
  j["dim"] = node.dim;
  j["retries"] = node.retries;
  j["cuts"] = node.cuts;
  json children = json::array();
  for (const DeflationNode& c : node.children) children.push_back(node_to_json(c));
  j["children"] = std::move(children);
  return j;
}

json trace_to_json(const ShiftTrace& trace) {
  json j;
  j["s0"] = complex_to_json(trace.s0);
  j["tau0"] = trace.tau0;
  json its = json::array();
  for (const ShiftTraceIteration& it : trace.iterations) {
    json e;
    e["s"] = complex_to_json(it.s);
    e["tau"] = it.tau;
    json net = json::array();
    json net_tau = json::array();
    for (int k = 0; k < 6; ++k) {
      net.push_back(complex_to_json(it.net[static_cast<size_t>(k)]));
      net_tau.push_back(it.net_tau[static_cast<size_t>(k)]);
    }
    e["net"] = std::move(net);
    e["net_tau"] = std::move(net_tau);
    e["accepted_index"] = it.accepted_index;
    e["precond_flag"] = it.precond_flag;
    e["singular_flag"] = it.singular_flag;
    its.push_back(std::move(e));
  }
  j["iterations"] = std::move(its);
  return j;
}

}  // namespace

ComplexMatrix parse_matrix_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("matrix parse error at byte ") +
                  std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("entries")) {
    throw IoError("matrix JSON must be an object with 'n' and 'entries'");
  }
  if (!j["n"].is_number_integer()) throw IoError("'n' must be an integer");
  int n = j["n"].get<int>();
  if (n < 1) throw IoError("'n' must be >= 1");
  const json& entries = j["entries"];
  if (!entries.is_array() ||
      entries.size() != static_cast<size_t>(n) * static_cast<size_t>(n)) {
    throw IoError("'entries' must hold n^2 [re, im] pairs in row-major order");
  }
  std::vector<Complex> data;
  data.reserve(entries.size());
  for (size_t k = 0; k < entries.size(); ++k) {
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number()) {
      throw IoError("entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    double re = e[0].get<double>();
    double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw IoError("entry " + std::to_string(k) + " is not finite");
    }
    data.emplace_back(re, im);
  }
  return ComplexMatrix(n, std::move(data));
}

ComplexMatrix read_matrix_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_json(buf.str());
}

std::string matrix_to_json_string(const ComplexMatrix& m) {
  json j;
  j["n"] = m.dim();
  json entries = json::array();
  for (const Complex& z : m.entries()) entries.push_back(complex_to_json(z));
  j["entries"] = std::move(entries);
  return j.dump();
}

void write_matrix_json(const ComplexMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write matrix file: " + path);
  out << matrix_to_json_string(m) << "\n";
}

std::string report_to_json_string(const EigenReport& report) {
  json j;
  json eigs = json::array();
  for (const Complex& z : report.eigenvalues) eigs.push_back(complex_to_json(z));
  j["eigenvalues"] = std::move(eigs);
  j["n"] = report.n;
  j["success"] = report.success;
  j["budget_used"] = report.budget_used;
  j["rhess_calls"] = report.rhess_calls;
  j["decouple_calls"] = report.decouple_calls;
  j["deflate_calls"] = report.deflate_calls;
  j["retries"] = report.retries;
  j["required_bits"] = report.required_bits;
  j["tree"] = node_to_json(report.tree);
  if (!report.traces.empty()) {
    json traces = json::array();
    for (const ShiftTrace& t : report.traces) traces.push_back(trace_to_json(t));
    j["traces"] = std::move(traces);
  }
  return j.dump(2);
}

std::string failure_report_json_string(int n, long required_bits,
                                       const std::string& reason) {
  json j;
  j["eigenvalues"] = json::array();
  j["n"] = n;
  j["success"] = false;
  j["reason"] = reason;
  j["required_bits"] = required_bits;
  return j.dump(2);
}

}  // namespace smalleig
