// Copyright 2026 The cfgperf Authors
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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "cfgperf/error.h"
#include "cfgperf/format.h"
#include "cfgperf/learners.h"
#include "cfgperf/rng.h"

namespace cfgperf {
namespace {

constexpr int kMaxDegree = 4;
constexpr std::size_t kMaxRounds = 64;
constexpr double kCollinear = 1e-10;
// Validation loss treated as an exact fit (relative to the label scale).
constexpr double kExact = 1e-10;
constexpr std::uint64_t kSplitSeed = 0x6d722d76616cULL;
constexpr double kTieTolerance = 1e-9;

bool FactorLess(const MrFactor& a, const MrFactor& b) {
  return std::tie(a.option, a.kind, a.other, a.power) <
         std::tie(b.option, b.kind, b.other, b.power);
}

int Degree(const MrTerm& t) {
  int d = 0;
  for (const auto& f : t.factors) d += f.kind == MrFactor::Kind::kPower ? f.power : 1;
  return d;
}

// Product of `term` and the single-factor `base`, or nullopt when the
// product is redundant (x^2 of a binary option, repeated log/ratio factors)
// or exceeds the degree cap.
std::optional<MrTerm> Multiply(const MrTerm& term, const MrFactor& base,
                               std::size_t num_binary) {
  MrTerm out = term;
  bool merged = false;
  for (auto& f : out.factors) {
    if (f.option != base.option || f.kind != base.kind) continue;
    if (base.kind != MrFactor::Kind::kPower || base.option < num_binary) {
      if (base.kind != MrFactor::Kind::kRatio || f.other == base.other) return std::nullopt;
      continue;
    }
    f.power += base.power;
    merged = true;
  }
  if (!merged) out.factors.push_back(base);
  if (Degree(out) > kMaxDegree) return std::nullopt;
  std::sort(out.factors.begin(), out.factors.end(), FactorLess);
  return out;
}

std::string Key(const MrTerm& t) {
  std::string k;
  for (const auto& f : t.factors) {
    k += std::to_string(static_cast<int>(f.kind)) + ":" + std::to_string(f.option) + ":" +
         std::to_string(f.other) + ":" + std::to_string(f.power) + ";";
  }
  return k;
}

const char* KindName(MrFactor::Kind k) {
  switch (k) {
    case MrFactor::Kind::kPower: return "power";
    case MrFactor::Kind::kLog: return "log";
    case MrFactor::Kind::kRatio: return "ratio";
  }
  return "";
}

MrFactor::Kind ParseKind(const std::string& s) {
  if (s == "power") return MrFactor::Kind::kPower;
  if (s == "log") return MrFactor::Kind::kLog;
  if (s == "ratio") return MrFactor::Kind::kRatio;
  throw Error(ErrorCode::kInvalidData, "unknown MR factor kind '" + s + "'");
}

struct Partition {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
};

// A fixed-seed fifth of the rows is held out; small sets are scored on their
// training rows. Strided selection would alias with the row order of a
// cartesian learning set and leave only a few numeric levels for validation.
Partition Split(std::size_t n) {
  Partition p;
  std::vector<char> held(n, 0);
  if (n >= 10) {
    Rng rng(kSplitSeed);
    for (std::size_t i : PartialShuffle(n, n / 5, rng)) held[i] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) (held[i] ? p.val : p.train).push_back(i);
  if (p.val.empty()) p.val = p.train;
  return p;
}

Eigen::VectorXd Gather(const Eigen::VectorXd& v, const std::vector<std::size_t>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out[static_cast<Eigen::Index>(k)] = v[static_cast<Eigen::Index>(idx[k])];
  }
  return out;
}

double Loss(const Eigen::VectorXd& y, const Eigen::VectorXd& pred, bool relative) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double e = std::fabs(y[i] - pred[i]);
    s += relative ? e / y[i] : e;
  }
  return s / static_cast<double>(y.size());
}

}  // namespace

std::string MrTerm::Name(const std::vector<std::string>& names) const {
  if (factors.empty()) return "1";
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += "*";
    switch (f.kind) {
      case MrFactor::Kind::kPower:
        s += names[f.option];
        if (f.power != 1) s += "^" + std::to_string(f.power);
        break;
      case MrFactor::Kind::kLog:
        s += "log(" + names[f.option] + ")";
        break;
      case MrFactor::Kind::kRatio:
        s += names[f.option] + "/" + names[f.other];
        break;
    }
  }
  return s;
}

MrModel::MrModel(HyperParams hp, FeatureEncoding encoding, std::vector<std::string> names,
                 std::vector<double> mins, std::vector<MrTerm> terms,
                 std::vector<double> coefficients)
    : Predictor(std::move(hp), std::move(encoding)),
      names_(std::move(names)),
      mins_(std::move(mins)),
      terms_(std::move(terms)),
      coefficients_(std::move(coefficients)) {
  if (terms_.size() != coefficients_.size() || names_.size() != mins_.size()) {
    throw Error(ErrorCode::kInvalidData, "MR model state is inconsistent");
  }
  for (const auto& t : terms_) {
    for (const auto& f : t.factors) {
      if (f.option >= names_.size() || f.other >= names_.size()) {
        throw Error(ErrorCode::kInvalidData, "MR term refers to an unknown option");
      }
    }
  }
}

double MrModel::TermValue(const MrTerm& term,
                          const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double v = 1.0;
  for (const auto& f : term.factors) {
    const double xo = x[static_cast<Eigen::Index>(f.option)];
    switch (f.kind) {
      case MrFactor::Kind::kPower:
        v *= std::pow(xo, f.power);
        break;
      case MrFactor::Kind::kLog:
        v *= std::log1p(xo - mins_[f.option]);
        break;
      case MrFactor::Kind::kRatio:
        v *= xo / (1.0 + x[static_cast<Eigen::Index>(f.other)] - mins_[f.other]);
        break;
    }
  }
  return v;
}

std::unique_ptr<MrModel> MrModel::Fit(const ConfigurationSpace& space,
                                      const LabeledSet& data, const HyperParams& hp) {
  if (data.size() < 2) throw Error(ErrorCode::kInvalidData, "MR needs at least 2 rows");
  FeatureEncoding enc(space, false);
  const Eigen::MatrixXd X = enc.EncodeAll(data.configs);
  const std::size_t n = data.size();
  const std::size_t nb = space.num_binary();
  const std::size_t d = space.num_options();
  std::vector<double> mins(d, 0.0);
  for (std::size_t k = 0; k < space.num_numeric(); ++k) {
    mins[nb + k] = space.numeric_options()[k].min();
  }
  const bool relative = hp.Text("lossFunction") == "relative";
  const std::string types = hp.Text("functionTypes");
  const double min_improvement = hp.Number("minImprovement");

  // A throwaway model evaluates candidate terms during the search.
  MrModel scratch(hp, enc, space.OptionNames(), mins, {}, {});

  std::vector<MrFactor> bases;
  for (std::size_t o = 0; o < nb; ++o) bases.push_back({MrFactor::Kind::kPower, o, 0, 1});
  for (std::size_t o = nb; o < d; ++o) {
    bases.push_back({MrFactor::Kind::kPower, o, 0, 1});
    if (types == "linear") continue;
    for (int p = 2; p <= kMaxDegree; ++p) bases.push_back({MrFactor::Kind::kPower, o, 0, p});
    if (types == "logarithmic" || types == "full") {
      bases.push_back({MrFactor::Kind::kLog, o, 0, 1});
    }
    if (types == "full") {
      for (std::size_t q = nb; q < d; ++q) {
        if (q != o) bases.push_back({MrFactor::Kind::kRatio, o, q, 1});
      }
    }
  }

  const Eigen::VectorXd y =
      Eigen::Map<const Eigen::VectorXd>(data.performance.data(), static_cast<Eigen::Index>(n));
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = relative ? 1.0 / (y[i] * y[i]) : 1.0;

  // Columns are scaled to unit max-norm; scaling does not change the fit.
  auto raw_column = [&](const MrTerm& t) {
    Eigen::VectorXd c(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const Eigen::VectorXd row = X.row(i).transpose();
      c[i] = scratch.TermValue(t, row);
    }
    return c;
  };
  auto column = [&](const MrTerm& t, double& scale) {
    Eigen::VectorXd c = raw_column(t);
    scale = c.cwiseAbs().maxCoeff();
    if (std::isfinite(scale) && scale > 0) c /= scale;
    return c;
  };
  // Every candidate is a selected term times one base factor, so its raw
  // column is the elementwise product of two cached columns.
  std::vector<Eigen::VectorXd> base_cols;
  for (const auto& b : bases) base_cols.push_back(raw_column(MrTerm{{b}}));

  const Partition part = Split(n);
  const Eigen::VectorXd yt = Gather(y, part.train);
  const Eigen::VectorXd yv = Gather(y, part.val);
  const Eigen::VectorXd wt = Gather(w, part.train);

  std::vector<MrTerm> selected = {MrTerm{}};
  std::unordered_set<std::string> keys = {Key(MrTerm{})};
  std::vector<Eigen::VectorXd> raw = {Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n))};
  std::vector<Eigen::VectorXd> cols = raw;

  struct Candidate {
    MrTerm term;
    std::size_t parent;  // index into `selected`
    std::size_t base;
  };
  // Per-candidate data that stays valid across rounds.
  struct Scored {
    bool usable = false;
    Eigen::VectorXd col;  // scaled, all rows
    Eigen::VectorXd ct;   // training rows
    Eigen::VectorXd cv;   // validation rows
    Eigen::VectorXd a;    // weighted inner products with selected columns
    double dd = 0.0;
    double cy = 0.0;
  };
  std::unordered_map<std::string, Scored> cache;

  for (std::size_t round = 0; round < kMaxRounds; ++round) {
    const auto m = static_cast<Eigen::Index>(selected.size());
    Eigen::MatrixXd At(yt.size(), m), Av(yv.size(), m);
    for (Eigen::Index c = 0; c < m; ++c) {
      At.col(c) = Gather(cols[static_cast<std::size_t>(c)], part.train);
      Av.col(c) = Gather(cols[static_cast<std::size_t>(c)], part.val);
    }
    const Eigen::MatrixXd AtW = At.transpose() * wt.asDiagonal();
    const Eigen::MatrixXd G = AtW * At;
    const Eigen::VectorXd g = AtW * yt;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    const Eigen::VectorXd beta0 = ldlt.solve(g);
    const Eigen::VectorXd p0 = Av * beta0;
    const double current = Loss(yv, p0, relative);
    if (current <= (relative ? kExact : kExact * yv.cwiseAbs().mean())) break;
    if (static_cast<std::size_t>(m) >= part.train.size()) break;

    std::vector<Candidate> candidates;
    std::unordered_set<std::string> seen;
    auto consider = [&](MrTerm t, std::size_t parent, std::size_t base) {
      const std::string k = Key(t);
      if (keys.count(k) || !seen.insert(k).second) return;
      candidates.push_back({std::move(t), parent, base});
    };
    for (std::size_t b = 0; b < bases.size(); ++b) consider(MrTerm{{bases[b]}}, 0, b);
    for (std::size_t s = 1; s < selected.size(); ++s) {
      for (std::size_t b = 0; b < bases.size(); ++b) {
        if (auto t = Multiply(selected[s], bases[b], nb)) consider(std::move(*t), s, b);
      }
    }

    double best_loss = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> best;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      const std::string key = Key(candidates[ci].term);
      auto it = cache.find(key);
      if (it == cache.end()) {
        Scored sc;
        Eigen::VectorXd col =
            raw[candidates[ci].parent].cwiseProduct(base_cols[candidates[ci].base]);
        const double scale = col.cwiseAbs().maxCoeff();
        sc.usable = std::isfinite(scale) && scale > 0.0 && col.allFinite();
        if (sc.usable) {
          col /= scale;
          sc.ct = Gather(col, part.train);
          sc.cv = Gather(col, part.val);
          sc.dd = sc.ct.dot(wt.cwiseProduct(sc.ct));
          sc.cy = sc.ct.dot(wt.cwiseProduct(yt));
          sc.col = std::move(col);
        }
        it = cache.emplace(key, std::move(sc)).first;
      }
      Scored& sc = it->second;
      if (!sc.usable) continue;
      // Inner products with the selected columns only grow by the columns
      // added since this candidate was last scored.
      const Eigen::Index have = sc.a.size();
      if (have < m) {
        sc.a.conservativeResize(m);
        for (Eigen::Index c = have; c < m; ++c) sc.a[c] = AtW.row(c).dot(sc.ct);
      }
      const Eigen::VectorXd u = ldlt.solve(sc.a);
      const double schur = sc.dd - sc.a.dot(u);
      if (!(schur > kCollinear * sc.dd)) continue;
      const double gamma = (sc.cy - sc.a.dot(beta0)) / schur;
      const Eigen::VectorXd pred = p0 + (sc.cv - Av * u) * gamma;
      const double loss = Loss(yv, pred, relative);
      // Near-equal losses (e.g. spans made equal by the sample) go to the
      // earlier, simpler candidate rather than to rounding noise.
      if (loss < best_loss * (1.0 - kTieTolerance)) {
        best_loss = loss;
        best = ci;
      }
    }
    if (!best) break;
    if ((current - best_loss) / current < min_improvement) break;
    const Candidate& win = candidates[*best];
    const std::string win_key = Key(win.term);
    keys.insert(win_key);
    raw.push_back(raw[win.parent].cwiseProduct(base_cols[win.base]));
    selected.push_back(win.term);
    cols.push_back(std::move(cache.at(win_key).col));
    cache.erase(win_key);
  }

  // Final coefficients from all rows.
  const auto m = static_cast<Eigen::Index>(selected.size());
  Eigen::MatrixXd A(static_cast<Eigen::Index>(n), m);
  std::vector<double> scales(selected.size());
  for (std::size_t c = 0; c < selected.size(); ++c) {
    A.col(static_cast<Eigen::Index>(c)) = column(selected[c], scales[c]);
  }
  const Eigen::VectorXd sw = w.cwiseSqrt();
  const Eigen::MatrixXd Aw = sw.asDiagonal() * A;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Aw);
  Eigen::VectorXd beta = qr.solve(sw.cwiseProduct(y));
  if (qr.rank() < m || !beta.allFinite()) {
    throw Error(ErrorCode::kNumerical, "MR final fit is rank deficient");
  }
  std::vector<double> coef(selected.size());
  for (std::size_t c = 0; c < selected.size(); ++c) {
    coef[c] = beta[static_cast<Eigen::Index>(c)] / scales[c];
  }
  return std::make_unique<MrModel>(hp, std::move(enc), space.OptionNames(), std::move(mins),
                                   std::move(selected), std::move(coef));
}

double MrModel::Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const {
  double s = 0.0;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    s += coefficients_[k] * TermValue(terms_[k], features);
  }
  return s;
}

std::string MrModel::TermString() const {
  std::string s;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const double c = coefficients_[k];
    if (s.empty()) {
      s = FormatDouble(c);
    } else {
      s += c < 0 ? " - " : " + ";
      s += FormatDouble(std::fabs(c));
    }
    if (!terms_[k].is_intercept()) s += "*" + terms_[k].Name(names_);
  }
  return s.empty() ? "0" : s;
}

nlohmann::json MrModel::StateJson() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& f : t.factors) {
      fs.push_back({{"kind", KindName(f.kind)}, {"option", f.option},
                    {"other", f.other}, {"power", f.power}});
    }
    terms.push_back(fs);
  }
  return {{"names", names_}, {"mins", mins_}, {"terms", terms},
          {"coefficients", coefficients_}, {"formula", TermString()}};
}

std::unique_ptr<MrModel> MrModel::FromState(HyperParams hp, FeatureEncoding encoding,
                                            const nlohmann::json& state) {
  std::vector<MrTerm> terms;
  for (const auto& fs : state.at("terms")) {
    MrTerm t;
    for (const auto& f : fs) {
      t.factors.push_back({ParseKind(f.at("kind").get<std::string>()),
                           f.at("option").get<std::size_t>(),
                           f.at("other").get<std::size_t>(), f.at("power").get<int>()});
    }
    terms.push_back(std::move(t));
  }
  return std::make_unique<MrModel>(std::move(hp), std::move(encoding),
                                   state.at("names").get<std::vector<std::string>>(),
                                   state.at("mins").get<std::vector<double>>(),
                                   std::move(terms),
                                   state.at("coefficients").get<std::vector<double>>());
}

}  // namespace cfgperf
