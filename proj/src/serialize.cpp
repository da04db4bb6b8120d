#include "mwdlab/serialize.hpp"

#include <fstream>
#include <json.hpp>

#include "mwdlab/error.hpp"
#include "mwdlab/field_io.hpp"

namespace mwdlab {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json square_to_json(const SquareMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

SquareMatrix square_from_json(const json& j, std::size_t d) {
  if (!j.is_array() || j.size() != d) fail(ErrorKind::Parse, "block must be a d x d array");
  SquareMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!j[i].is_array() || j[i].size() != d) fail(ErrorKind::Parse, "block row has wrong length");
    for (std::size_t k = 0; k < d; ++k) {
      if (!j[i][k].is_number()) fail(ErrorKind::Parse, "matrix entries must be numbers");
      m(i, k) = j[i][k].get<double>();
      if (!std::isfinite(m(i, k))) fail(ErrorKind::Parse, "matrix entries must be finite");
    }
  }
  return m;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) fail(ErrorKind::Parse, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

/// A number or an array of numbers.
std::vector<double> vec(const json& v) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) fail(ErrorKind::Parse, "expected a number or an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(ErrorKind::Parse, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

json vec_json(const std::vector<double>& v) {
  if (v.size() == 1) return v[0];
  return json(v);
}

json box_json(json j, const Box& box, const std::vector<double>& freq) {
  if (box.lo.size() == 1) {
    j["interval"] = {box.lo[0], box.hi[0]};
  } else {
    j["lo"] = box.lo;
    j["hi"] = box.hi;
  }
  j["freq"] = vec_json(freq);
  return j;
}

std::pair<Box, std::vector<double>> box_from(const json& j) {
  Box box;
  if (j.contains("interval")) {
    const auto iv = vec(j.at("interval"));
    if (iv.size() != 2) fail(ErrorKind::Parse, "interval must be [a, b]");
    box = {{iv[0]}, {iv[1]}};
  } else {
    box = {vec(field(j, "lo")), vec(field(j, "hi"))};
  }
  auto freq = vec(field(j, "freq"));
  if (freq.size() == 1 && box.lo.size() > 1) freq.assign(box.lo.size(), freq[0]);
  return {box, freq};
}

json signal_json(const Signal& f) {
  return std::visit(
      Overloaded{
          [&](const SignalNode::Gaussian& g) -> json {
            return {{"kind", "gaussian"}, {"lambda", g.lambda}, {"d", f.dim()}};
          },
          [&](const SignalNode::Hermite& h) -> json { return {{"kind", "hermite"}, {"n", h.n}}; },
          [&](const SignalNode::WindowedTone& w) -> json {
            return box_json({{"kind", "tone"}}, w.box, w.freq);
          },
          [&](const SignalNode::ToneSpectrum& w) -> json {
            return box_json({{"kind", "tone_spectrum"}}, w.box, w.freq);
          },
          [&](const SignalNode::TFShift& s) -> json {
            return {{"kind", "tfshift"},
                    {"x", vec_json(s.x)},
                    {"omega", vec_json(s.w)},
                    {"inner", signal_json(s.inner)}};
          },
          [&](const SignalNode::Dilate& s) -> json {
            return {{"kind", "dilate"}, {"lambda", s.lambda}, {"inner", signal_json(s.inner)}};
          },
          [&](const SignalNode::Conjugate& s) -> json {
            return {{"kind", "conjugate"}, {"inner", signal_json(s.inner)}};
          },
          [&](const SignalNode::Reflect& s) -> json {
            return {{"kind", "reflect"}, {"inner", signal_json(s.inner)}};
          },
          [&](const SignalNode::Sum& s) -> json {
            json terms = json::array();
            for (const auto& [c, g] : s.terms) terms.push_back({c.real(), c.imag(), signal_json(g)});
            return {{"kind", "sum"}, {"terms", terms}};
          },
          [&](const SignalNode::Sampled& s) -> json {
            json values = json::array();
            for (const auto& v : s.values) values.push_back({v.real(), v.imag()});
            return {{"kind", "sampled"},
                    {"axis", format_axis(s.grid)},
                    {"zero_outside", s.zero_outside},
                    {"values", values}};
          },
          [&](const SignalNode::LinearMap& s) -> json {
            return {{"kind", "linear_map"},
                    {"matrix", square_to_json(s.b)},
                    {"inner", signal_json(s.inner)}};
          },
          [&](const SignalNode::Tensor& s) -> json {
            json factors = json::array();
            for (const auto& g : s.factors) factors.push_back(signal_json(g));
            return {{"kind", "tensor"}, {"factors", factors}};
          },
      },
      f.node().body);
}

Signal signal_from(const json& j) {
  const json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) fail(ErrorKind::Parse, "'kind' must be a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "gaussian") {
    const std::size_t d = j.contains("d") ? j.at("d").get<std::size_t>() : 1;
    return Signal::gaussian(d, number(j, "lambda"));
  }
  if (kind == "hermite") {
    const double n = number(j, "n");
    if (n < 0 || n != std::floor(n)) fail(ErrorKind::Parse, "hermite order must be a natural number");
    return Signal::hermite(static_cast<unsigned>(n));
  }
  if (kind == "tone" || kind == "tone_spectrum") {
    auto [box, freq] = box_from(j);
    const Signal t = Signal::tone(box, freq);
    return kind == "tone" ? t : t.fourier();
  }
  if (kind == "tfshift")
    return signal_from(field(j, "inner")).tf_shift(vec(field(j, "x")), vec(field(j, "omega")));
  if (kind == "dilate") return signal_from(field(j, "inner")).dilate(number(j, "lambda"));
  if (kind == "conjugate") return signal_from(field(j, "inner")).conjugate();
  if (kind == "reflect") return signal_from(field(j, "inner")).reflect();
  if (kind == "sum") {
    const json& terms = field(j, "terms");
    if (!terms.is_array() || terms.empty()) fail(ErrorKind::Parse, "'terms' must be a non-empty array");
    std::vector<std::pair<cplx, Signal>> out;
    for (const auto& t : terms) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number() || !t[1].is_number())
        fail(ErrorKind::Parse, "sum terms are [re, im, signal]");
      out.emplace_back(cplx{t[0].get<double>(), t[1].get<double>()}, signal_from(t[2]));
    }
    return Signal::sum(std::move(out));
  }
  if (kind == "sampled") {
    if (j.contains("file")) {
      const std::string path = j.at("file").get<std::string>();
      std::ifstream in(path);
      if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
      return read_signal_csv(in);
    }
    const Grid1D axis = parse_axis(field(j, "axis").get<std::string>());
    std::vector<cplx> values;
    for (const auto& v : field(j, "values")) {
      if (!v.is_array() || v.size() != 2) fail(ErrorKind::Parse, "sampled values are [re, im]");
      values.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    const bool zero = j.value("zero_outside", true);
    return Signal::sampled(axis, std::move(values), zero);
  }
  if (kind == "linear_map") {
    const json& m = field(j, "matrix");
    return signal_from(field(j, "inner")).linear_map(square_from_json(m, m.size()));
  }
  if (kind == "tensor") {
    std::vector<Signal> factors;
    for (const auto& f : field(j, "factors")) factors.push_back(signal_from(f));
    return Signal::tensor(std::move(factors));
  }
  fail(ErrorKind::Parse, "unknown signal kind '" + kind + "'");
}

}  // namespace

std::string matrix_to_json(const BlockMatrix& a) {
  json j{{"d", a.dim()},
         {"A11", square_to_json(a.a11)},
         {"A12", square_to_json(a.a12)},
         {"A21", square_to_json(a.a21)},
         {"A22", square_to_json(a.a22)}};
  return j.dump();
}

BlockMatrix matrix_from_json(const std::string& text) {
  const json j = parse_text(text);
  const json& dj = field(j, "d");
  if (!dj.is_number_integer() || dj.get<long long>() < 1 ||
      dj.get<long long>() > static_cast<long long>(kMaxDim))
    fail(ErrorKind::Parse, "'d' must be a positive integer");
  const auto d = dj.get<std::size_t>();
  return {square_from_json(field(j, "A11"), d), square_from_json(field(j, "A12"), d),
          square_from_json(field(j, "A21"), d), square_from_json(field(j, "A22"), d)};
}

std::string signal_to_json(const Signal& f) { return signal_json(f).dump(); }

Signal signal_from_json(const std::string& text) {
  try {
    return signal_from(parse_text(text));
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

std::string report_to_json(const CheckReport& r) {
  json j{{"name", r.name},
         {"max_abs_error", r.max_abs_error},
         {"tolerance", r.tolerance},
         {"passed", r.passed},
         {"details", r.details}};
  return j.dump();
}

std::string diamond_to_json(const DiamondGeometry& g) {
  json lines = json::array();
  for (const auto& l : g.lines) lines.push_back({l.a, l.b, l.c});
  json j{{"m", g.m},
         {"i1", {g.x1, g.x1 + g.h1}},
         {"i2", {g.x2, g.x2 + g.h2}},
         {"v1", {g.v1[0], g.v1[1]}},
         {"v2", {g.v2[0], g.v2[1]}},
         {"lines", lines}};
  return j.dump();
}

}  // namespace mwdlab
