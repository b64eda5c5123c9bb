#include "radonlab/signal_io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "radonlab/errors.hpp"

namespace radonlab {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != ' ' && c != '\t') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_int(const std::string& s, std::int64_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

double parse_value(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("bad value '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad value '" + s + "'");
  }
}

// Rows of (point, value); all rows must have the same width.
std::vector<std::pair<std::vector<std::int64_t>, double>> read_rows(const std::string& text, int& dims) {
  std::vector<std::pair<std::vector<std::int64_t>, double>> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  dims = 0;
  while (std::getline(in, line)) {
    const auto fields = split(line, ',');
    if (fields.size() == 1 && fields[0].empty()) continue;
    std::int64_t probe = 0;
    if (first && !parse_int(fields[0], probe)) {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() < 2) throw ParseError("row needs at least index,value: '" + line + "'");
    const int d = static_cast<int>(fields.size()) - 1;
    if (dims == 0) dims = d;
    if (d != dims) throw ParseError("ragged CSV row: '" + line + "'");
    std::vector<std::int64_t> x(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      if (!parse_int(fields[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(j)]))
        throw ParseError("bad index '" + fields[static_cast<std::size_t>(j)] + "'");
    rows.emplace_back(std::move(x), parse_value(fields.back()));
  }
  return rows;
}

std::string join_point(const std::vector<std::int64_t>& x) {
  std::string s;
  for (const auto v : x) s += std::to_string(v) + ",";
  return s;
}

std::string header(int d) {
  if (d == 1) return "index,value\n";
  std::string s;
  for (int j = 1; j <= d; ++j) s += "i" + std::to_string(j) + ",";
  return s + "value\n";
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Signal1D& f) {
  std::string out = header(1);
  for (std::int64_t i = 0; i < f.size(); ++i)
    out += std::to_string(f.offset() + i) + "," + format_double(f.values()[i]) + "\n";
  return out;
}

std::string to_csv(const SignalD& f) {
  std::string out = header(f.dims());
  const std::size_t d = f.extents().size();
  for_each_row(f.extents(), [&](const std::vector<std::int64_t>& idx, std::int64_t row_start) {
    std::vector<std::int64_t> x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = f.offsets()[j] + idx[j];
    for (std::int64_t i = 0; i < f.extents()[d - 1]; ++i) {
      x[d - 1] = f.offsets()[d - 1] + i;
      out += join_point(x) + format_double(f.values()[row_start + i]) + "\n";
    }
  });
  return out;
}

std::string to_csv(const SparseSignal& f) {
  std::string out = header(f.dims());
  for (const auto& [x, v] : f.entries()) out += join_point(x) + format_double(v) + "\n";
  return out;
}

Signal1D signal1d_from_csv(const std::string& text) {
  int dims = 0;
  const auto rows = read_rows(text, dims);
  if (rows.empty()) return Signal1D();
  if (dims != 1) throw ParseError("expected index,value rows");
  std::int64_t lo = rows[0].first[0], hi = lo;
  for (const auto& r : rows) {
    lo = std::min(lo, r.first[0]);
    hi = std::max(hi, r.first[0]);
  }
  require_window(hi - lo + 1, "CSV signal");
  Signal1D::Values v = Signal1D::Values::Zero(hi - lo + 1);
  for (const auto& r : rows) v[r.first[0] - lo] = r.second;
  return Signal1D(lo, std::move(v));
}

SparseSignal sparse_from_csv(const std::string& text) {
  int dims = 0;
  const auto rows = read_rows(text, dims);
  if (rows.empty()) throw ParseError("empty CSV: dimension unknown");
  SparseSignal f(dims);
  for (const auto& [x, v] : rows) f.set(x, v);
  return f;
}

SignalD signald_from_csv(const std::string& text) { return to_dense(sparse_from_csv(text)); }

nlohmann::json to_json(const Signal1D& f) {
  return {{"offset", f.offset()}, {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

nlohmann::json to_json(const SignalD& f) {
  return {{"offsets", f.offsets()},
          {"extents", f.extents()},
          {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

nlohmann::json to_json(const SparseSignal& f) {
  nlohmann::json points = nlohmann::json::array(), values = nlohmann::json::array();
  for (const auto& [x, v] : f.entries()) {
    points.push_back(x);
    values.push_back(v);
  }
  return {{"dims", f.dims()}, {"points", points}, {"values", values}};
}

Signal1D signal1d_from_json(const nlohmann::json& j) {
  try {
    const auto values = j.at("values").get<std::vector<double>>();
    return Signal1D(j.at("offset").get<std::int64_t>(), Eigen::Map<const Signal1D::Values>(values.data(), values.size()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("signal JSON: ") + e.what());
  }
}

SignalD signald_from_json(const nlohmann::json& j) {
  try {
    const auto values = j.at("values").get<std::vector<double>>();
    return SignalD(j.at("offsets").get<std::vector<std::int64_t>>(), j.at("extents").get<std::vector<std::int64_t>>(),
                   Eigen::Map<const SignalD::Values>(values.data(), values.size()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("signal JSON: ") + e.what());
  }
}

SparseSignal sparse_from_json(const nlohmann::json& j) {
  try {
    SparseSignal f(j.at("dims").get<int>());
    const auto& points = j.at("points");
    const auto& values = j.at("values");
    if (points.size() != values.size()) throw ParseError("points and values differ in length");
    for (std::size_t i = 0; i < points.size(); ++i)
      f.set(points[i].get<std::vector<std::int64_t>>(), values[i].get<double>());
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("signal JSON: ") + e.what());
  }
}

}  // namespace radonlab
