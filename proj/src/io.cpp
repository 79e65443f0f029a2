// Copyright 2026 The hofspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hofspec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "hofspec/errors.hpp"

namespace hofspec::io {

namespace fs = std::filesystem;
using operators::OperatorParams;
using spectra::GridSpec;
using spectra::SpectrumKind;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fixed3(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  std::string s(buf, end);
  return s == "-0.000" ? "0.000" : s;
}

std::string hexfloat(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
  return std::string(buf, end);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "read failed for " + path.string());
  return os.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_real(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "cannot format a non-finite number");
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 17);
  const std::string sci(buf, end);
  const double mag = std::abs(v);
  if (mag < 1e-4 || mag >= 1e16) return sci;

  // Re-place the decimal point of d.ddd...e±XX.
  const auto epos = sci.find('e');
  const int exp = std::stoi(sci.substr(epos + 1));
  std::string digits;
  for (std::size_t i = 0; i < epos; ++i)
    if (std::isdigit(static_cast<unsigned char>(sci[i]))) digits.push_back(sci[i]);
  std::string out = v < 0 ? "-" : "";
  if (exp >= 0) {
    out += digits.substr(0, static_cast<std::size_t>(exp) + 1);
    out += '.';
    out += digits.substr(static_cast<std::size_t>(exp) + 1);
  } else {
    out += "0.";
    out.append(static_cast<std::size_t>(-exp - 1), '0');
    out += digits;
  }
  return out;
}

double parse_real(const std::string& text) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e)
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + text + "'");
  return v;
}

void write_atomic(const fs::path& path, const std::string& contents) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp =
      dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot create " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ignore;
      fs::remove(tmp, ignore);
      throw Error(ErrorCode::Io, "write failed for " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw Error(ErrorCode::Io, "cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

std::string spectrum_csv(const SpectrumSet& s) {
  const OperatorParams& p = s.params();
  std::string out;
  out += "# version=" + std::string(kVersion) + "\n";
  out += "# spectrum_kind=" + std::string(spectra::to_string(s.kind())) + "\n";
  out += "# kind=" + std::string(operators::to_string(p.kind)) + "\n";
  out += "# kappa=" + format_real(p.kappa) + "\n";
  out += "# lambda=" + format_real(p.lambda) + "\n";
  out += "# alpha=" + p.alpha.str() + "\n";
  out += "# theta=" + (p.theta ? format_real(*p.theta) : std::string("mother")) + "\n";
  out += "# n_x=" + std::to_string(s.grid().n_x) + "\n";
  out += "# n_theta=" + std::to_string(s.grid().n_theta) + "\n";
  out += "# error_bound=" + format_real(s.error_bound()) + "\n";
  out += "# points=" + std::to_string(s.size()) + "\n";
  if (s.kind() == SpectrumKind::UnitCircle) {
    out += "re,im,eigenphase\n";
    for (const auto& z : s.points())
      out += format_real(z.real()) + "," + format_real(z.imag()) + "," +
             format_real(linalg::principal_arg(z)) + "\n";
  } else {
    out += "value\n";
    for (const auto& z : s.points()) out += format_real(z.real()) + "\n";
  }
  return out;
}

SpectrumSet parse_spectrum_csv(const std::string& text) {
  std::map<std::string, std::string> meta;
  std::vector<linalg::Complex> pts;
  bool header_seen = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidArgument, "spectrum CSV line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail("header without '='");
      meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      if (line == "re,im,eigenphase" || line == "value") continue;
      fail("missing column header");
    }
    const auto cols = split(line, ',');
    if (cols.size() != 1 && cols.size() != 3) fail("expected 1 or 3 columns");
    try {
      pts.emplace_back(parse_real(cols[0]), cols.size() == 3 ? parse_real(cols[1]) : 0.0);
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  auto need = [&](const char* key) -> const std::string& {
    auto it = meta.find(key);
    if (it == meta.end()) throw Error(ErrorCode::InvalidArgument, std::string("spectrum CSV lacks '# ") + key + "='");
    return it->second;
  };
  OperatorParams params;
  params.kind = operators::parse_kind(need("kind"));
  params.kappa = parse_real(need("kappa"));
  params.lambda = parse_real(need("lambda"));
  params.alpha = operators::RationalAlpha::parse(need("alpha"));
  const std::string& theta = need("theta");
  if (theta != "mother") params.theta = parse_real(theta);
  GridSpec grid{std::stoi(need("n_x")), std::stoi(need("n_theta"))};
  const SpectrumKind kind = need("spectrum_kind") == spectra::to_string(SpectrumKind::UnitCircle)
                                ? SpectrumKind::UnitCircle
                                : SpectrumKind::RealLine;
  if (kind != spectra::spectrum_kind_of(params.kind))
    throw Error(ErrorCode::InvalidArgument, "spectrum CSV kind does not match operator kind");
  SpectrumSet s(kind, std::move(pts), params, grid, parse_real(need("error_bound")));
  if (auto it = meta.find("points"); it != meta.end() && std::to_string(s.size()) != it->second)
    throw Error(ErrorCode::InvalidArgument, "spectrum CSV row count does not match '# points='");
  return s;
}

void write_spectrum_csv(const SpectrumSet& s, const fs::path& path) { write_atomic(path, spectrum_csv(s)); }

SpectrumSet read_spectrum_csv(const fs::path& path) { return parse_spectrum_csv(read_file(path)); }

std::string rings_svg(const std::vector<SpectrumSet>& rings) {
  if (rings.empty()) throw Error(ErrorCode::InvalidArgument, "ring plot needs at least one spectrum");
  for (const auto& s : rings) {
    if (s.kind() != SpectrumKind::UnitCircle)
      throw Error(ErrorCode::KindMismatch, "ring plot needs unit-circle spectra");
    if (!(s.params().alpha == rings.front().params().alpha))
      throw Error(ErrorCode::InvalidArgument, "ring plot spectra must share alpha");
  }
  constexpr int kBins = 3600;
  constexpr double size = 800.0, c = 400.0, r0 = 100.0, r1 = 360.0;
  const double step = rings.size() > 1 ? (r1 - r0) / static_cast<double>(rings.size() - 1) : 0.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<title>alpha=" << rings.front().params().alpha.str() << "</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<g stroke=\"#888\" stroke-width=\"1\">\n";
  os << "<line x1=\"20\" y1=\"400\" x2=\"780\" y2=\"400\"/>\n";
  os << "<line x1=\"400\" y1=\"20\" x2=\"400\" y2=\"780\"/>\n";
  os << "</g>\n";
  os << "<text x=\"770\" y=\"392\" font-size=\"14\" text-anchor=\"end\">Re</text>\n";
  os << "<text x=\"408\" y=\"34\" font-size=\"14\">Im</text>\n";
  os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"3\">\n";

  auto pt = [&](double r, double phase) {
    return fixed3(c + r * std::cos(phase)) + " " + fixed3(c - r * std::sin(phase));
  };
  for (std::size_t i = 0; i < rings.size(); ++i) {
    const double r = r0 + step * static_cast<double>(i);
    std::vector<bool> occ(kBins, false);
    for (double ph : spectra::eigenphases(rings[i])) {
      int b = static_cast<int>(std::floor((ph + kPi) / (2.0 * kPi) * kBins));
      occ[static_cast<std::size_t>(std::clamp(b, 0, kBins - 1))] = true;
    }
    const OperatorParams& p = rings[i].params();
    os << "<g><title>kind=" << operators::to_string(p.kind) << " kappa=" << format_real(p.kappa)
       << " lambda=" << format_real(p.lambda) << "</title>\n";
    if (std::all_of(occ.begin(), occ.end(), [](bool b) { return b; })) {
      os << "<circle cx=\"400.000\" cy=\"400.000\" r=\"" << fixed3(r) << "\"/>\n";
      os << "</g>\n";
      continue;
    }
    // Start scanning at an empty bin so no run straddles the seam.
    int start = 0;
    while (occ[static_cast<std::size_t>(start)]) ++start;
    for (int k = 0; k < kBins;) {
      const int b = (start + k) % kBins;
      if (!occ[static_cast<std::size_t>(b)]) {
        ++k;
        continue;
      }
      int len = 0;
      while (k < kBins && occ[static_cast<std::size_t>((start + k) % kBins)]) {
        ++len;
        ++k;
      }
      const double a0 = -kPi + 2.0 * kPi * b / kBins;
      const double a1 = a0 + 2.0 * kPi * len / kBins;
      os << "<path d=\"M " << pt(r, a0) << " A " << fixed3(r) << ' ' << fixed3(r) << " 0 "
         << (a1 - a0 > kPi ? 1 : 0) << " 0 " << pt(r, a1) << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void write_rings_svg(const std::vector<SpectrumSet>& rings, const fs::path& path) {
  write_atomic(path, rings_svg(rings));
}

std::string butterfly_csv(const analysis::ButterflyDataset& ds) {
  std::string out;
  out += "# version=" + std::string(kVersion) + "\n";
  out += "# kind=" + std::string(operators::to_string(ds.kind)) + "\n";
  out += "# kappa=" + format_real(ds.kappa) + "\n";
  out += "# lambda=" + format_real(ds.lambda) + "\n";
  out += "# q_max=" + std::to_string(ds.q_max) + "\n";
  out += "# grid=" + std::to_string(ds.grid_n) + "\n";
  out += ds.kind == operators::OperatorKind::H ? "p,q,value\n" : "p,q,eigenphase\n";
  for (const auto& r : ds.rows)
    out += std::to_string(r.p) + "," + std::to_string(r.q) + "," + format_real(r.value) + "\n";
  return out;
}

std::string cache_key_text(const OperatorParams& raw, const GridSpec& grid, const linalg::Tolerances& tol) {
  const OperatorParams p = raw.normalized();
  std::string s = "hofspec/" + std::string(kVersion);
  s += "|kind=" + std::string(operators::to_string(p.kind));
  s += "|kappa=" + hexfloat(p.kappa);
  s += "|lambda=" + hexfloat(p.lambda);
  s += "|p=" + std::to_string(p.alpha.p()) + "|q=" + std::to_string(p.alpha.q());
  s += p.theta ? "|scope=fixed|theta=" + hexfloat(*p.theta) : std::string("|scope=mother|theta=-");
  s += "|n_x=" + std::to_string(grid.n_x) + "|n_theta=" + std::to_string(grid.n_theta);
  s += "|tol=" + hexfloat(tol.hermitian) + "," + hexfloat(tol.unitary) + "," + hexfloat(tol.eig_residual);
  return s;
}

std::string cache_key(const OperatorParams& params, const GridSpec& grid, const linalg::Tolerances& tol) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(cache_key_text(params, grid, tol))));
  return buf;
}

SpectrumSet cached_spectrum(const fs::path& dir, const OperatorParams& params, const GridSpec& grid,
                            const spectra::SweepOptions& opts, bool* hit) {
  grid.validate();
  const fs::path file = dir / (cache_key(params, grid, opts.tol) + ".csv");
  std::error_code ec;
  if (fs::exists(file, ec)) {
    if (hit) *hit = true;
    return read_spectrum_csv(file);
  }
  if (hit) *hit = false;
  SpectrumSet s = spectra::compute_spectrum(params, grid, opts);
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create cache directory " + dir.string() + ": " + ec.message());
  write_spectrum_csv(s, file);
  return s;
}

std::size_t cache_clear(const fs::path& dir) {
  std::error_code ec;
  if (!fs::exists(dir, ec)) return 0;
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      fs::remove(entry.path(), ec);
      if (ec) throw Error(ErrorCode::Io, "cannot remove " + entry.path().string());
      ++n;
    }
  }
  if (ec) throw Error(ErrorCode::Io, "cannot list cache directory " + dir.string());
  return n;
}

}  // namespace hofspec::io
