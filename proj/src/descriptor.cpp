#include "fraclap/descriptor.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fraclap/errors.hpp"

namespace fraclap {

namespace {

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string item(text.substr(pos, next - pos));
    std::size_t used = 0;
    double val = 0.0;
    try {
      val = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("not a number in descriptor: '" + item + "'");
    }
    if (used != item.size()) throw InvalidArgument("trailing characters in descriptor: '" + item + "'");
    out.push_back(val);
    pos = next + 1;
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double sq_norm(std::span<const double> x) {
  double r = 0.0;
  for (double c : x) r += c * c;
  return r;
}

// Positive roots t of |x + t w|^2 = R^2 and |x - t w|^2 = R^2.
void sphere_crossings(std::span<const double> x, std::span<const double> w, double R,
                      std::vector<double>& out) {
  const double ww = dot(w, w);
  const double xw = dot(x, w);
  const double c = sq_norm(x) - R * R;
  for (double sgn : {1.0, -1.0}) {
    const double b = sgn * xw;  // t^2 ww + 2 b t + c = 0
    const double disc = b * b - ww * c;
    if (disc < 0) continue;
    const double sq = std::sqrt(disc);
    // Stable quadratic roots.
    const double q = -(b + std::copysign(sq, b));
    for (double t : {q / ww, q != 0.0 ? c / q : 0.0})
      if (t > 0 && std::isfinite(t)) out.push_back(t);
  }
}

}  // namespace

double getoor_kappa(int d, double s) {
  const double hd = 0.5 * d;
  return std::exp(-2.0 * s * std::log(2.0) + std::lgamma(hd) - std::lgamma(hd + s) - std::lgamma(1.0 + s));
}

Descriptor Descriptor::getoor(int d, double s, double r) {
  if (d < 1) throw InvalidArgument("getoor: dimension must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("getoor: s must lie in (0,1)");
  if (!(r > 0.0)) throw InvalidArgument("getoor: radius must be positive");
  Descriptor out;
  out.family_ = Family::getoor;
  out.params_ = {static_cast<double>(d), s, r, getoor_kappa(d, s)};
  out.name_ = "getoor:" + std::to_string(d) + "," + fmt(s) + "," + fmt(r);
  return out;
}

Descriptor Descriptor::constant(double c) {
  Descriptor out;
  out.family_ = Family::constant;
  out.params_ = {c};
  out.name_ = "const:" + fmt(c);
  return out;
}

Descriptor Descriptor::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "getoor") {
    const auto p = parse_list(tail);
    if (p.size() != 3 || p[0] != std::floor(p[0]))
      throw InvalidArgument("getoor descriptor needs d,s,r");
    return getoor(static_cast<int>(p[0]), p[1], p[2]);
  }
  if (head == "const") {
    const auto p = parse_list(tail);
    if (p.size() != 1) throw InvalidArgument("const descriptor needs one value");
    return constant(p[0]);
  }
  Descriptor out;
  if (head == "power") {
    out.family_ = Family::power;
    out.params_ = parse_list(tail);
    if (out.params_.size() != 1 || !(out.params_[0] >= 0.0))
      throw InvalidArgument("power descriptor needs one exponent >= 0");
    out.name_ = "power:" + fmt(out.params_[0]);
  } else if (head == "bump") {
    out.family_ = Family::bump;
    out.params_ = tail.empty() ? std::vector<double>{1.0} : parse_list(tail);
    if (out.params_.size() != 1 || !(out.params_[0] > 0.0))
      throw InvalidArgument("bump descriptor takes one positive radius");
    out.name_ = tail.empty() ? "bump" : "bump:" + fmt(out.params_[0]);
  } else if (head == "poly") {
    out.family_ = Family::poly;
    out.params_ = parse_list(tail);
    std::string n = "poly:";
    for (std::size_t i = 0; i < out.params_.size(); ++i) n += (i ? "," : "") + fmt(out.params_[i]);
    out.name_ = n;
  } else if (head == "table") {
    out.family_ = Family::table;
    const std::string path(tail);
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open table file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      for (auto& ch : line)
        if (ch == ';' || ch == '\t') ch = ',';
      std::vector<double> row;
      try {
        row = parse_list(line);
      } catch (const InvalidArgument&) {
        continue;  // header
      }
      if (row.size() < 2) throw InvalidArgument("table rows need x,value");
      out.table_x_.push_back(row[0]);
      out.table_y_.push_back(row[1]);
    }
    if (out.table_x_.size() < 2) throw InvalidArgument("table needs at least two rows");
    for (std::size_t i = 1; i < out.table_x_.size(); ++i)
      if (!(out.table_x_[i] > out.table_x_[i - 1])) throw InvalidArgument("table x must increase");
    out.name_ = "table:" + path;
  } else {
    throw InvalidArgument("unknown descriptor '" + std::string(text) + "'");
  }
  return out;
}

double Descriptor::operator()(std::span<const double> x) const {
  const int need = dim();
  if (need && static_cast<int>(x.size()) != need)
    throw InvalidArgument(name_ + ": evaluated at a point of the wrong dimension");
  double v = 0.0;
  switch (family_) {
    case Family::getoor: {
      const double r = params_[2];
      const double q = r * r - sq_norm(x);
      v = q > 0 ? params_[3] * std::pow(q, params_[1]) : 0.0;
      break;
    }
    case Family::power:
      v = x[0] > 0 ? std::pow(x[0], params_[0]) : 0.0;
      break;
    case Family::bump: {
      const double q = 1.0 - sq_norm(x) / (params_[0] * params_[0]);
      v = q > 0 ? std::exp(1.0 - 1.0 / q) : 0.0;
      break;
    }
    case Family::constant:
      v = params_[0];
      break;
    case Family::poly:
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) v = v * x[0] + *it;
      break;
    case Family::table: {
      const double t = x[0];
      if (t < table_x_.front() || t > table_x_.back()) return 0.0;
      auto hi = std::upper_bound(table_x_.begin(), table_x_.end(), t);
      if (hi == table_x_.end()) return table_y_.back();
      const auto i = static_cast<std::size_t>(hi - table_x_.begin());
      const double a = (t - table_x_[i - 1]) / (table_x_[i] - table_x_[i - 1]);
      v = (1 - a) * table_y_[i - 1] + a * table_y_[i];
      break;
    }
  }
  if (!std::isfinite(v)) throw InvalidArgument(name_ + ": produced a non-finite value");
  return v;
}

bool Descriptor::zero_extended() const {
  return family_ == Family::getoor || family_ == Family::bump;
}

double Descriptor::support_radius() const {
  if (family_ == Family::getoor) return params_[2];
  if (family_ == Family::bump) return params_[0];
  return std::numeric_limits<double>::infinity();
}

int Descriptor::dim() const {
  if (family_ == Family::getoor) return static_cast<int>(params_[0]);
  if (family_ == Family::table) return 1;
  return 0;
}

std::vector<double> Descriptor::line_breaks(std::span<const double> x, std::span<const double> w) const {
  std::vector<double> out;
  if (compact()) {
    sphere_crossings(x, w, support_radius(), out);
  } else if (family_ == Family::power && w[0] != 0.0) {
    const double t = std::abs(x[0] / w[0]);
    if (t > 0) out.push_back(t);
  } else if (family_ == Family::table && w[0] != 0.0) {
    for (double xi : table_x_) {
      const double t = std::abs((xi - x[0]) / w[0]);
      if (t > 0) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace fraclap
