#include "eqlat/stone.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <tuple>

#include "eqlat/error.hpp"
#include "eqlat/util.hpp"

namespace eqlat {

namespace {

void compile_rec(const Term& t, std::vector<int8_t>& code) {
  if (t.is_var()) {
    code.push_back(int8_t(t.var_index()));
    return;
  }
  compile_rec(t.left(), code);
  compile_rec(t.right(), code);
  code.push_back(-1);
}

// N^k with a cap; returns false when the cap would be exceeded.
bool checked_pow(uint64_t base, int exp, uint64_t cap, uint64_t* out) {
  uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > cap / base) return false;
    r *= base;
  }
  *out = r;
  return true;
}

// Iterates every assignment of `num_vars` variables over {0..n-1} in mixed
// radix order, calling fn(assignment); fn returns false to stop early.
template <typename F>
void for_each_tuple(int num_vars, int n, F fn) {
  std::array<uint8_t, 32> assign{};
  uint64_t total;
  checked_pow(uint64_t(n), num_vars, ~uint64_t(0) >> 1, &total);
  for (uint64_t t = 0;; ++t) {
    if (!fn(assign.data())) return;
    if (t + 1 == total) return;
    for (int d = 0; d < num_vars; ++d) {
      if (uint8_t(assign[size_t(d)] + 1) < n) {
        ++assign[size_t(d)];
        break;
      }
      assign[size_t(d)] = 0;
    }
  }
}

}  // namespace

TermProgram::TermProgram(const Term& t) {
  if (!t.valid()) throw InvalidArgument("compiling an invalid term");
  compile_rec(t, code_);
}

Fraction stone_pairing_exact(const Equation& e, const Magma& m,
                             uint64_t tuple_budget) {
  int v = e.num_vars();
  uint64_t den;
  if (!checked_pow(uint64_t(m.size()), v, tuple_budget, &den))
    throw LimitError("exact pairing budget exceeded: " +
                     std::to_string(m.size()) + "^" + std::to_string(v));
  TermProgram lp(e.lhs()), rp(e.rhs());
  const uint8_t* table = m.data();
  int n = m.size();
  uint64_t count = 0;
  for_each_tuple(v, n, [&](const uint8_t* a) {
    count += lp.eval(table, n, a) == rp.eval(table, n, a);
    return true;
  });
  return Fraction{count, den};
}

double stone_pairing_mc(const Equation& e, const Magma& m, int64_t samples,
                        uint64_t seed) {
  if (samples < 1) throw InvalidArgument("sample count must be >= 1");
  int v = e.num_vars();
  TermProgram lp(e.lhs()), rp(e.rhs());
  const uint8_t* table = m.data();
  int n = m.size();
  SplitMix64 rng(seed);
  std::array<uint8_t, 32> assign{};
  int64_t count = 0;
  for (int64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < v; ++i)
      assign[size_t(i)] = uint8_t(rng.next_below(uint64_t(n)));
    count += lp.eval(table, n, assign.data()) == rp.eval(table, n, assign.data());
  }
  return double(count) / double(samples);
}

bool satisfies(const Magma& m, const Term& lhs, const Term& rhs) {
  // variables may be sparse here (raw equations); remap to a dense prefix
  uint32_t mask = lhs.var_mask() | rhs.var_mask();
  std::array<uint8_t, 32> slots{};  // dense index -> original variable id
  int v = 0;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) slots[size_t(v++)] = uint8_t(i);
  TermProgram lp(lhs), rp(rhs);
  const uint8_t* table = m.data();
  int n = m.size();
  std::array<uint8_t, 32> assign{};  // indexed by original variable ids
  bool ok = true;
  for_each_tuple(v, n, [&](const uint8_t* dense) {
    for (int i = 0; i < v; ++i) assign[size_t(slots[size_t(i)])] = dense[i];
    if (lp.eval(table, n, assign.data()) != rp.eval(table, n, assign.data())) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

bool satisfies(const Magma& m, const Equation& e) {
  return satisfies(m, e.lhs(), e.rhs());
}

StoneConfig::Mode StoneConfig::parse_mode(const std::string& s) {
  if (s == "auto") return Mode::kAuto;
  if (s == "exact") return Mode::kExact;
  if (s == "mc") return Mode::kMonteCarlo;
  throw InvalidArgument("unknown stone mode: " + s);
}

std::string StoneConfig::mode_name(Mode m) {
  switch (m) {
    case Mode::kAuto: return "auto";
    case Mode::kExact: return "exact";
    case Mode::kMonteCarlo: return "mc";
  }
  return "auto";
}

// --- spectra -----------------------------------------------------------------

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
}

std::vector<std::pair<double, int64_t>> Spectrum::run_length() const {
  std::vector<std::pair<double, int64_t>> out;
  for (double v : values_) {
    if (!out.empty() && out.back().first == v)
      ++out.back().second;
    else
      out.push_back({v, 1});
  }
  return out;
}

std::vector<int64_t> Spectrum::histogram(int bins) const {
  if (bins < 1) throw InvalidArgument("bin count must be >= 1");
  std::vector<int64_t> h(size_t(bins), 0);
  for (double v : values_) {
    int b = int(v * bins);
    if (b >= bins) b = bins - 1;
    if (b < 0) b = 0;
    ++h[size_t(b)];
  }
  return h;
}

InterferenceSpectrum::InterferenceSpectrum(
    std::vector<std::pair<double, double>> pairs)
    : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
}

std::vector<std::tuple<double, double, int64_t>>
InterferenceSpectrum::run_length() const {
  std::vector<std::tuple<double, double, int64_t>> out;
  for (const auto& p : pairs_) {
    if (!out.empty() && std::get<0>(out.back()) == p.first &&
        std::get<1>(out.back()) == p.second)
      ++std::get<2>(out.back());
    else
      out.push_back({p.first, p.second, 1});
  }
  return out;
}

// --- feature matrix ----------------------------------------------------------

FeatureMatrix FeatureMatrix::build(const Corpus& corpus,
                                   const MagmaSample& sample,
                                   const StoneConfig& config, int threads) {
  if (corpus.size() == 0) throw InvalidArgument("empty corpus");
  if (sample.size() == 0) throw InvalidArgument("empty sample");
  FeatureMatrix f;
  f.rows_ = corpus.size();
  f.cols_ = sample.size();
  f.magma_size_ = sample.magma_size();
  f.mc_samples_ = config.mc_samples;
  f.mc_seed_ = config.mc_seed;
  f.values_.assign(size_t(f.rows_ * f.cols_), 0.0f);
  f.denominators_.assign(size_t(f.rows_), 0);
  int n = sample.magma_size();

  // decide per row: the tuple count depends only on num_vars and N
  bool any_exact = false;
  std::vector<uint8_t> exact_row(size_t(f.rows_), 0);
  for (int64_t k = 0; k < f.rows_; ++k) {
    uint64_t den;
    bool fits = checked_pow(uint64_t(n), corpus.at(k).num_vars(),
                            config.exact_budget, &den);
    bool ex = false;
    switch (config.mode) {
      case StoneConfig::Mode::kExact:
        if (!fits)
          throw LimitError("exact mode requested but row " +
                           std::to_string(k) + " exceeds the tuple budget");
        ex = true;
        break;
      case StoneConfig::Mode::kAuto:
        ex = fits;
        break;
      case StoneConfig::Mode::kMonteCarlo:
        ex = false;
        break;
    }
    exact_row[size_t(k)] = ex;
    any_exact |= ex;
  }
  if (any_exact && config.store_fractions)
    f.numerators_.assign(size_t(f.rows_ * f.cols_), 0);

  parallel_for(f.rows_, threads, [&](int64_t k) {
    const Equation& e = corpus.at(k);
    if (exact_row[size_t(k)]) {
      uint64_t den;
      checked_pow(uint64_t(n), e.num_vars(), config.exact_budget, &den);
      f.denominators_[size_t(k)] = den;
      TermProgram lp(e.lhs()), rp(e.rhs());
      for (int64_t l = 0; l < f.cols_; ++l) {
        const Magma& m = sample.at(l);
        const uint8_t* table = m.data();
        uint64_t count = 0;
        for_each_tuple(e.num_vars(), n, [&](const uint8_t* a) {
          count += lp.eval(table, n, a) == rp.eval(table, n, a);
          return true;
        });
        f.values_[size_t(k * f.cols_ + l)] =
            float(double(count) / double(den));
        if (!f.numerators_.empty())
          f.numerators_[size_t(k * f.cols_ + l)] = count;
      }
    } else {
      uint64_t row_seed = substream(config.mc_seed, uint64_t(k));
      for (int64_t l = 0; l < f.cols_; ++l) {
        double p = stone_pairing_mc(e, sample.at(l), config.mc_samples,
                                    substream(row_seed, uint64_t(l)));
        f.values_[size_t(k * f.cols_ + l)] = float(p);
      }
    }
  });
  return f;
}

void FeatureMatrix::check_row(int64_t row) const {
  if (row < 0 || row >= rows_)
    throw InvalidArgument("matrix row out of range: " + std::to_string(row));
}

double FeatureMatrix::value(int64_t row, int64_t col) const {
  check_row(row);
  if (col < 0 || col >= cols_)
    throw InvalidArgument("matrix column out of range: " +
                          std::to_string(col));
  size_t i = size_t(row * cols_ + col);
  if (!numerators_.empty() && denominators_[size_t(row)] != 0)
    return double(numerators_[i]) / double(denominators_[size_t(row)]);
  return double(values_[i]);
}

std::vector<double> FeatureMatrix::row_values(int64_t row) const {
  check_row(row);
  std::vector<double> out(size_t(cols_));
  for (int64_t l = 0; l < cols_; ++l) out[size_t(l)] = value(row, l);
  return out;
}

bool FeatureMatrix::row_exact(int64_t row) const {
  check_row(row);
  return denominators_[size_t(row)] != 0;
}

uint64_t FeatureMatrix::row_denominator(int64_t row) const {
  check_row(row);
  return denominators_[size_t(row)];
}

uint64_t FeatureMatrix::numerator(int64_t row, int64_t col) const {
  check_row(row);
  if (numerators_.empty() || denominators_[size_t(row)] == 0)
    throw InvalidArgument("row has no exact counts");
  return numerators_[size_t(row * cols_ + col)];
}

bool FeatureMatrix::all_exact() const {
  for (int64_t k = 0; k < rows_; ++k)
    if (denominators_[size_t(k)] == 0) return false;
  return true;
}

Spectrum FeatureMatrix::spectrum(int64_t row) const {
  return Spectrum(row_values(row));
}

InterferenceSpectrum FeatureMatrix::interference(int64_t row_a,
                                                 int64_t row_b) const {
  check_row(row_a);
  check_row(row_b);
  std::vector<std::pair<double, double>> pairs(size_t(cols_));
  for (int64_t l = 0; l < cols_; ++l)
    pairs[size_t(l)] = {value(row_a, l), value(row_b, l)};
  return InterferenceSpectrum(std::move(pairs));
}

std::pair<double, double> FeatureMatrix::expectation_variance(
    int64_t row) const {
  check_row(row);
  double mean = 0;
  for (int64_t l = 0; l < cols_; ++l) mean += value(row, l);
  mean /= double(cols_);
  double var = 0;
  for (int64_t l = 0; l < cols_; ++l) {
    double d = value(row, l) - mean;
    var += d * d;
  }
  var /= double(cols_);
  return {mean, var};
}

std::vector<double> FeatureMatrix::expectations() const {
  std::vector<double> out(size_t(rows_));
  for (int64_t k = 0; k < rows_; ++k)
    out[size_t(k)] = expectation_variance(k).first;
  return out;
}

std::vector<double> FeatureMatrix::variances() const {
  std::vector<double> out(size_t(rows_));
  for (int64_t k = 0; k < rows_; ++k)
    out[size_t(k)] = expectation_variance(k).second;
  return out;
}

// Binary layout: magic, format version, config hash, tool version, dims,
// Monte Carlo parameters, f32 values, then optional exact counts.
namespace {
constexpr char kMagic[8] = {'E', 'Q', 'L', 'A', 'T', 'M', 'T', 'X'};
constexpr uint32_t kFormatVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T* v) {
  in.read(reinterpret_cast<char*>(v), sizeof(T));
}
}  // namespace

void FeatureMatrix::save(const std::string& path, uint64_t config_hash) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(kMagic, 8);
  write_pod(out, kFormatVersion);
  write_pod(out, config_hash);
  char version[16] = {0};
  std::strncpy(version, "eqlat-0.1.0", sizeof(version) - 1);
  out.write(version, sizeof(version));
  write_pod(out, rows_);
  write_pod(out, cols_);
  int32_t msize = magma_size_;
  write_pod(out, msize);
  write_pod(out, mc_samples_);
  write_pod(out, mc_seed_);
  uint8_t has_fraction = numerators_.empty() ? 0 : 1;
  write_pod(out, has_fraction);
  out.write(reinterpret_cast<const char*>(values_.data()),
            std::streamsize(values_.size() * sizeof(float)));
  out.write(reinterpret_cast<const char*>(denominators_.data()),
            std::streamsize(denominators_.size() * sizeof(uint64_t)));
  if (has_fraction)
    out.write(reinterpret_cast<const char*>(numerators_.data()),
              std::streamsize(numerators_.size() * sizeof(uint64_t)));
  if (!out) throw IoError("write failed: " + path);
}

FeatureMatrix FeatureMatrix::load(const std::string& path,
                                  uint64_t* config_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw DataError("not a feature matrix file: " + path);
  uint32_t fv;
  read_pod(in, &fv);
  if (fv != kFormatVersion)
    throw DataError("unsupported matrix format version in " + path);
  uint64_t hash;
  read_pod(in, &hash);
  if (config_hash) *config_hash = hash;
  char version[16];
  in.read(version, sizeof(version));
  FeatureMatrix f;
  read_pod(in, &f.rows_);
  read_pod(in, &f.cols_);
  int32_t msize;
  read_pod(in, &msize);
  f.magma_size_ = msize;
  read_pod(in, &f.mc_samples_);
  read_pod(in, &f.mc_seed_);
  uint8_t has_fraction;
  read_pod(in, &has_fraction);
  if (!in || f.rows_ <= 0 || f.cols_ <= 0)
    throw DataError("corrupt matrix header in " + path);
  f.values_.resize(size_t(f.rows_ * f.cols_));
  in.read(reinterpret_cast<char*>(f.values_.data()),
          std::streamsize(f.values_.size() * sizeof(float)));
  f.denominators_.resize(size_t(f.rows_));
  in.read(reinterpret_cast<char*>(f.denominators_.data()),
          std::streamsize(f.denominators_.size() * sizeof(uint64_t)));
  if (has_fraction) {
    f.numerators_.resize(size_t(f.rows_ * f.cols_));
    in.read(reinterpret_cast<char*>(f.numerators_.data()),
            std::streamsize(f.numerators_.size() * sizeof(uint64_t)));
  }
  if (!in) throw DataError("truncated matrix file: " + path);
  return f;
}

void FeatureMatrix::save_csv(const std::string& path,
                             const std::string& header) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  if (!header.empty()) out << "# " << header << "\n";
  char buf[32];
  for (int64_t k = 0; k < rows_; ++k) {
    for (int64_t l = 0; l < cols_; ++l) {
      if (l) out << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", value(k, l));
      out << buf;
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace eqlat
