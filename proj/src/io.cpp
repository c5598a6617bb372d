#include "chirptf/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace chirptf {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

// ---------------------------------------------------------------- TFR1

namespace {

void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f64(std::string& s, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint64_t get_le(std::string_view b, std::size_t at, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[at + i])) << (8 * i);
  }
  return v;
}

double get_f64(std::string_view b, std::size_t at) {
  return std::bit_cast<double>(get_le(b, at, 8));
}

constexpr std::size_t kTfrHeader = 4 + 4 + 4 + 4 * 8;

}  // namespace

std::string encode_tfr1(const TfrMatrix& tfr) {
  const SampleGrid& g = tfr.grid();
  if (g.n_time > 0xffffffffu || g.n_freq > 0xffffffffu) throw Error("TFR1: matrix too large");
  std::string s = "TFR1";
  s.reserve(kTfrHeader + tfr.values().size() * 16);
  put_u32(s, static_cast<std::uint32_t>(g.n_time));
  put_u32(s, static_cast<std::uint32_t>(g.n_freq));
  put_f64(s, g.t0);
  put_f64(s, g.dt);
  put_f64(s, g.f0);
  put_f64(s, g.df);
  for (const auto& v : tfr.values()) {
    put_f64(s, v.real());
    put_f64(s, v.imag());
  }
  return s;
}

TfrMatrix decode_tfr1(std::string_view b) {
  if (b.size() < kTfrHeader || b.substr(0, 4) != "TFR1") throw Error("TFR1: bad magic or header");
  const auto n_time = static_cast<std::size_t>(get_le(b, 4, 4));
  const auto n_freq = static_cast<std::size_t>(get_le(b, 8, 4));
  const double t0 = get_f64(b, 12), dt = get_f64(b, 20), f0 = get_f64(b, 28), df = get_f64(b, 36);
  if (b.size() != kTfrHeader + n_time * n_freq * 16) throw Error("TFR1: payload length mismatch");
  const SampleGrid g = make_grid(n_time, dt, df, t0, f0, n_freq);
  std::vector<cplx> values(n_time * n_freq);
  std::size_t at = kTfrHeader;
  for (auto& v : values) {
    v = {get_f64(b, at), get_f64(b, at + 8)};
    at += 16;
  }
  return TfrMatrix(g, std::move(values));
}

void write_tfr1(const fs::path& path, const TfrMatrix& tfr) {
  write_file_atomic(path, encode_tfr1(tfr));
}

TfrMatrix read_tfr1(const fs::path& path) { return decode_tfr1(read_file(path)); }

// ---------------------------------------------------------------- PGM

std::string encode_pgm(const TfrMatrix& tfr, double floor_db) {
  if (!(floor_db < 0.0)) throw ConfigError("PGM: floor must be negative dB");
  const RealMatrix db = magnitude_db(tfr, floor_db);
  const std::size_t w = tfr.n_time(), h = tfr.n_freq();
  std::string s = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  s.reserve(s.size() + w * h);
  for (std::size_t row = 0; row < h; ++row) {
    const std::size_t n = h - 1 - row;
    for (std::size_t m = 0; m < w; ++m) {
      const double level = std::clamp((db(m, n) - floor_db) / -floor_db, 0.0, 1.0);
      s.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(level * 255.0))));
    }
  }
  return s;
}

void write_pgm(const fs::path& path, const TfrMatrix& tfr, double floor_db) {
  write_file_atomic(path, encode_pgm(tfr, floor_db));
}

// ---------------------------------------------------------------- CSV

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

double plain_number(std::string_view tok) {
  const std::string copy(tok);
  if (copy.empty()) throw ConfigError("expected a number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (end != copy.c_str() + copy.size() || errno == ERANGE) {
    throw ConfigError("bad number '" + copy + "'");
  }
  return v;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) out.push_back(line);
  return out;
}

}  // namespace

std::string encode_signal_csv(const ComplexSignal& signal) {
  std::string s = "t,re,im\n";
  for (std::size_t l = 0; l < signal.samples.size(); ++l) {
    s += fmt(signal.grid.time_at(l)) + "," + fmt(signal.samples[l].real()) + "," +
         fmt(signal.samples[l].imag()) + "\n";
  }
  return s;
}

SampledSignal parse_signal_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "t,re,im") throw ConfigError("signal CSV: expected header t,re,im");
  SampledSignal out;
  std::vector<double> times;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split(lines[i], ',');
    if (f.size() != 3) throw ConfigError("signal CSV: line " + std::to_string(i + 1) + " needs 3 fields");
    times.push_back(plain_number(f[0]));
    out.samples.emplace_back(plain_number(f[1]), plain_number(f[2]));
  }
  if (!times.empty()) out.t0 = times.front();
  if (times.size() >= 2) {
    out.dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(out.dt > 0.0)) throw ConfigError("signal CSV: time column must increase");
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double step = times[i] - times[i - 1];
      if (std::abs(step - out.dt) > 1e-6 * out.dt) {
        throw ConfigError("signal CSV: samples are not uniformly spaced");
      }
    }
  }
  return out;
}

SampledSignal read_signal_csv(const fs::path& path) { return parse_signal_csv(read_file(path)); }

std::string encode_ifest_csv(const std::vector<RidgeCurve>& curves, const SampleGrid& grid) {
  std::string s = "t,component_id,f_inst_hz,f_prime_hz_per_s\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& curve = curves[c];
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const double chirp = i < curve.chirp.size() ? curve.chirp[i] : std::nan("");
      s += fmt(grid.time_at(curve.points[i].m)) + "," + std::to_string(c) + "," +
           fmt(curve.points[i].freq) + "," + fmt(chirp) + "\n";
    }
  }
  return s;
}

std::string encode_mse_csv(const MseReport& r) {
  std::string s = "snr,method,mse,trials\n";
  for (std::size_t k = 0; k < r.snr_db.size(); ++k) {
    for (std::size_t i = 0; i < r.methods.size(); ++i) {
      s += fmt(r.snr_db[k]) + "," + method_name(r.methods[i]) + "," + fmt(r.mse[i][k]) + "," +
           std::to_string(r.trials) + "\n";
    }
  }
  return s;
}

// ---------------------------------------------------------------- spec files

namespace {

double number_term(std::string_view tok) {
  tok = trim(tok);
  double sign = 1.0;
  if (!tok.empty() && (tok.front() == '-' || tok.front() == '+')) {
    if (tok.front() == '-') sign = -1.0;
    tok.remove_prefix(1);
    tok = trim(tok);
  }
  double scale = 1.0;
  if (tok.size() >= 2 && tok.substr(tok.size() - 2) == "pi") {
    scale = kPi;
    tok.remove_suffix(2);
    tok = trim(tok);
    if (!tok.empty() && tok.back() == '*') {
      tok.remove_suffix(1);
      tok = trim(tok);
      if (tok.empty()) throw ConfigError("bad number: dangling '*'");
    }
    if (tok.empty()) return sign * scale;
  }
  return sign * scale * plain_number(tok);
}

bool parse_bool(std::string_view v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("expected true/false, got '" + std::string(v) + "'");
}

std::vector<double> number_list(std::string_view v) {
  std::vector<double> out;
  for (auto tok : split(v, ',')) out.push_back(parse_number(tok));
  return out;
}

std::size_t count_value(std::string_view v) {
  const double d = parse_number(v);
  if (!(d >= 0.0) || d != std::floor(d)) throw ConfigError("expected a non-negative integer");
  return static_cast<std::size_t>(d);
}

}  // namespace

double parse_number(std::string_view token) {
  const auto parts = split(token, '/');
  if (parts.size() == 1) return number_term(parts[0]);
  if (parts.size() == 2) {
    const double den = number_term(parts[1]);
    if (den == 0.0) throw ConfigError("division by zero in '" + std::string(token) + "'");
    return number_term(parts[0]) / den;
  }
  throw ConfigError("bad number '" + std::string(token) + "'");
}

SpecFile parse_spec(std::string_view text) {
  SpecFile out;
  Component* comp = nullptr;
  std::size_t line_no = 0;
  for (auto raw : lines_of(text)) {
    ++line_no;
    auto line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = " (line " + std::to_string(line_no) + ")";
    try {
      if (line == "[component]") {
        out.spec.components.emplace_back();
        comp = &out.spec.components.back();
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'");
      const auto key = trim(line.substr(0, eq));
      const auto val = trim(line.substr(eq + 1));
      if (!comp) {
        if (key == "preset") {
          const Preset p = preset(std::string(val));
          out.spec = p.spec;
          out.dt = p.grid.dt;
          out.df = p.grid.df;
          out.t0 = p.grid.t0;
          out.f0 = p.grid.f0;
          out.samples = p.grid.n_time;
          out.freq_bins = p.grid.n_freq;
          if (p.xi > 0.0) out.xi = p.xi;
        } else if (key == "dt") out.dt = parse_number(val);
        else if (key == "df") out.df = parse_number(val);
        else if (key == "t0") out.t0 = parse_number(val);
        else if (key == "f0") out.f0 = parse_number(val);
        else if (key == "xi") out.xi = parse_number(val);
        else if (key == "samples") out.samples = count_value(val);
        else if (key == "freq_bins") out.freq_bins = count_value(val);
        else if (key == "real") out.spec.real = parse_bool(val);
        else throw ConfigError("unknown key '" + std::string(key) + "'");
        continue;
      }
      if (key == "amplitude") {
        comp->envelope.kind = Envelope::Kind::constant;
        comp->envelope.c0 = parse_number(val);
      } else if (key == "envelope") {
        if (val == "constant") comp->envelope.kind = Envelope::Kind::constant;
        else if (val == "sinusoidal") comp->envelope.kind = Envelope::Kind::sinusoidal;
        else if (val == "random") comp->envelope.kind = Envelope::Kind::random_abs_gaussian;
        else throw ConfigError("envelope must be constant, sinusoidal or random");
      } else if (key == "envelope_offset") {
        comp->envelope.c0 = parse_number(val);
      } else if (key == "envelope_amplitude") {
        comp->envelope.c1 = parse_number(val);
      } else if (key == "envelope_omega") {
        comp->envelope.omega = parse_number(val);
      } else if (key == "seed") {
        comp->envelope.seed = static_cast<std::uint64_t>(count_value(val));
      } else if (key == "phase" || key == "cycles") {
        auto coeffs = number_list(val);
        if (coeffs.size() > 6) throw ConfigError("at most 6 coefficients (degree 5)");
        if (comp->poly.size() < coeffs.size()) comp->poly.resize(coeffs.size(), 0.0);
        const double unit = key == "cycles" ? 2.0 * kPi : 1.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) comp->poly[k] += unit * coeffs[k];
      } else if (key == "sin" || key == "cos") {
        const auto v = number_list(val);
        if (v.size() != 2) throw ConfigError("'" + std::string(key) + "' takes c, omega");
        comp->terms.push_back(
            {key == "sin" ? PhaseTerm::Kind::sine : PhaseTerm::Kind::cosine, v[0], v[1]});
      } else {
        throw ConfigError("unknown component key '" + std::string(key) + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("spec: ") + e.what() + where);
    }
  }
  out.spec.validate();
  return out;
}

SpecFile read_spec(const fs::path& path) { return parse_spec(read_file(path)); }

}  // namespace chirptf
