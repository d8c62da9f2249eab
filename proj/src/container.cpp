#include "ffbt/container.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ffbt/error.hpp"

namespace ffbt {

namespace {

using nlohmann::json;

void append_array(std::string& out, const char* name, const ComplexMatrix& values, bool imag) {
  out += ",\"";
  out += name;
  out += "\":[";
  const auto& v = values.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_real(imag ? v[i].imag() : v[i].real());
  }
  out += ']';
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed container: ") + e.what());
  }
}

ComplexMatrix read_payload(const json& doc, int side) {
  const auto& re = doc.at("re");
  const auto& im = doc.at("im");
  const std::size_t n = std::size_t(side) * std::size_t(side);
  if (!re.is_array() || !im.is_array() || re.size() != n || im.size() != n)
    throw FormatError("payload arrays must hold " + std::to_string(n) + " entries");
  ComplexMatrix m(side, side);
  for (std::size_t i = 0; i < n; ++i) m.data()[i] = cplx(re[i].get<double>(), im[i].get<double>());
  return m;
}

template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed container: ") + e.what());
  }
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  // "-0" would read back as the integer 0
  if (v == 0.0 && std::signbit(v)) return "-0.0";
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed for " + path.string());
}

std::string field_to_text(const SampledField& field) {
  std::string out = "{\"header\":{\"L\":" + std::to_string(field.side()) + ",\"a\":" +
                    format_real(field.half_width()) + ",\"layout\":\"row-major\"}";
  append_array(out, "re", field.values(), false);
  append_array(out, "im", field.values(), true);
  out += "}\n";
  return out;
}

SampledField field_from_text(const std::string& text) {
  return guarded([&] {
    const json doc = parse(text);
    const auto& h = doc.at("header");
    if (h.at("layout").get<std::string>() != "row-major") throw FormatError("unsupported layout");
    const int side = h.at("L").get<int>();
    if (side < 1) throw FormatError("field side must be >= 1");
    return SampledField(Grid(side), read_payload(doc, side), h.at("a").get<double>());
  });
}

void write_field(const std::filesystem::path& path, const SampledField& field) {
  write_text(path, field_to_text(field));
}

SampledField read_field(const std::filesystem::path& path) { return field_from_text(read_text(path)); }

std::string kernel_file_name(KernelKind kind, HarmonicIndex idx, int K) {
  return std::string(kind == KernelKind::plain ? "Q" : "Qx") + "_m" + std::to_string(idx.m) + "_n" +
         std::to_string(idx.n) + "_K" + std::to_string(K) + ".json";
}

void write_kernel_matrix(const std::filesystem::path& path, KernelKind kind, HarmonicIndex idx, int K,
                         const ComplexMatrix& values) {
  std::string out = std::string("{\"header\":{\"kind\":\"") + (kind == KernelKind::plain ? "Q" : "Qx") +
                    "\",\"m\":" + std::to_string(idx.m) + ",\"n\":" + std::to_string(idx.n) +
                    ",\"K\":" + std::to_string(K) + "}";
  append_array(out, "re", values, false);
  append_array(out, "im", values, true);
  out += "}\n";
  write_text(path, out);
}

KernelFile read_kernel_matrix(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  return guarded([&] {
    const json doc = parse(text);
    const auto& h = doc.at("header");
    KernelFile k;
    const auto kind = h.at("kind").get<std::string>();
    if (kind != "Q" && kind != "Qx") throw FormatError("unknown kernel kind " + kind);
    k.kind = kind == "Q" ? KernelKind::plain : KernelKind::cross;
    k.idx = HarmonicIndex{h.at("m").get<int>(), h.at("n").get<int>()};
    k.K = h.at("K").get<int>();
    if (k.K < 1) throw FormatError("kernel order must be >= 1");
    k.values = read_payload(doc, 2 * k.K + 1);
    return k;
  });
}

std::string spectrum_to_text(const Spectrum& spec) {
  std::string out = "{\"header\":{\"M\":" + std::to_string(spec.M) + ",\"N\":" + std::to_string(spec.N) +
                    ",\"K\":" + std::to_string(spec.K) + ",\"a\":" + format_real(spec.a) + "},\"records\":[";
  bool first = true;
  for (int m = -spec.M; m <= spec.M; ++m) {
    for (int n = 1; n <= spec.N; ++n) {
      const cplx c = spec.at(m, n);
      out += first ? "\n" : ",\n";
      first = false;
      out += "[" + std::to_string(m) + "," + std::to_string(n) + "," + format_real(c.real()) + "," +
             format_real(c.imag()) + "]";
    }
  }
  out += "\n]}\n";
  return out;
}

Spectrum spectrum_from_text(const std::string& text) {
  return guarded([&] {
    const json doc = parse(text);
    const auto& h = doc.at("header");
    Spectrum spec(h.at("M").get<int>(), h.at("N").get<int>(), h.at("K").get<int>(), h.at("a").get<double>());
    const auto& records = doc.at("records");
    if (!records.is_array() || records.size() != spec.size())
      throw FormatError("spectrum needs " + std::to_string(spec.size()) + " records");
    for (const auto& r : records) {
      if (!r.is_array() || r.size() != 4) throw FormatError("spectrum record must be [m,n,re,im]");
      spec.at(r[0].get<int>(), r[1].get<int>()) = cplx(r[2].get<double>(), r[3].get<double>());
    }
    return spec;
  });
}

void write_spectrum(const std::filesystem::path& path, const Spectrum& spec) {
  write_text(path, spectrum_to_text(spec));
}

Spectrum read_spectrum(const std::filesystem::path& path) { return spectrum_from_text(read_text(path)); }

}  // namespace ffbt
