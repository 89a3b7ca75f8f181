#include <cmath>
#include <cstdio>
#include <fstream>

#include "lppshock/experiments.hpp"

namespace lppshock {

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump(const nlohmann::ordered_json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(k).dump() + ": ";
        dump(v, out, indent + 2);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool scalars = true;
      for (const auto& v : j) scalars = scalars && !v.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k > 0) out += ", ";
          dump(j[k], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) out += ",\n";
        out += pad;
        dump(j[k], out, indent + 2);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << content;
  if (!f) throw std::runtime_error("write failed for " + p.string());
}

std::string csv_number(double x) { return std::isfinite(x) ? format_number(x) : "nan"; }

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

void write_outputs(const ExperimentResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", dump_json(r.report));
  std::string ecdf = "s,empirical,predicted\n";
  for (const auto& row : r.ecdf)
    ecdf += csv_number(row.s) + "," + csv_number(row.empirical) + "," + csv_number(row.predicted) + "\n";
  write_file(dir / "ecdf.csv", ecdf);
  std::string samples = "replica,statistic\n";
  for (std::size_t k = 0; k < r.samples.size(); ++k)
    samples += std::to_string(k) + "," + csv_number(r.samples[k]) + "\n";
  write_file(dir / "samples.csv", samples);
  write_file(dir / "timings.json", dump_json(r.timings));
}

}  // namespace lppshock
