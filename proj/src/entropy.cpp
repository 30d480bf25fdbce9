#include "suspk/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "suspk/errors.hpp"
#include "suspk/perron.hpp"

namespace suspk {

namespace {

// c * log(lambda) brought to normal form: collapse rational powers of the
// base, then strip perfect-power structure from a rational base so that equal
// values get identical representations.
ExactEntropy make_entropy(const Rat& coeff, const FieldElement& lambda) {
  ExactEntropy e;
  e.zero = false;
  e.coefficient = coeff;
  e.base = lambda;
  if (!fe_is_rational(lambda)) {
    int d = lambda.field->degree;
    FieldElement p = lambda;
    for (int j = 2; j <= 2 * d; ++j) {
      p = fe_mul(p, lambda);
      if (fe_is_rational(p)) {
        e.base = fe_rat(fe_to_rational(p));
        e.coefficient /= j;
        break;
      }
    }
  }
  if (fe_is_rational(*e.base)) {
    Rat r = fe_to_rational(*e.base);
    require(is_integer(r) && r >= 2, ErrorCode::Internal, "entropy base must exceed 1");
    Int m = r.get_num();
    std::vector<Int> ps = prime_support(m);
    Int g = 0;
    for (const Int& p : ps) {
      long ex = 0;
      Int w = m;
      while (w % p == 0) { w /= p; ++ex; }
      g = int_gcd(g, Int(ex));
    }
    if (g > 1) {
      long gl = g.get_si();
      Int root = 1;
      for (const Int& p : ps) {
        long ex = 0;
        Int w = m;
        while (w % p == 0) { w /= p; ++ex; }
        root *= int_pow(p, static_cast<unsigned long>(ex / gl));
      }
      e.base = fe_rat(Rat(root));
      e.coefficient *= g;
    }
  }
  return e;
}

FieldElement multiplier(const ExactEntropy& e) {
  return e.scale ? fe_scale(*e.scale, e.coefficient) : fe_rat(e.coefficient);
}

double ln_int(const Int& v) {
  signed long ex = 0;
  double d = mpz_get_d_2exp(&ex, v.get_mpz_t());
  return std::log(d) + static_cast<double>(ex) * std::log(2.0);
}

}  // namespace

ExactEntropy sft_entropy(const Sft& s) {
  PerronData pd = perron_data(s.adjacency);
  if (fe_is_one(pd.lambda)) return ExactEntropy{};
  return make_entropy(Rat(1), pd.lambda);
}

ExactEntropy substitution_entropy(const Substitution&) {
  // Linear word complexity: the subshift itself has entropy zero.
  return ExactEntropy{};
}

ExactEntropy suspension_entropy(const ExactEntropy& h, const FieldElement& t) {
  if (h.zero) return ExactEntropy{};
  ExactEntropy e = h;
  if (fe_is_rational(t)) {
    Rat r = fe_to_rational(t);
    if (r < 0) r = -r;
    if (r == 0) return ExactEntropy{};
    e.coefficient *= r;
    return e;
  }
  FieldElement s = fe_abs(t);
  if (e.scale) {
    FieldPtr target =
        e.scale->field->degree >= s.field->degree ? e.scale->field : s.field;
    s = fe_mul(fe_promote(*e.scale, target), fe_promote(s, target));
  }
  if (fe_is_rational(s)) {
    Rat r = fe_to_rational(s);
    if (r < 0) r = -r;
    e.coefficient *= r;
    e.scale.reset();
  } else {
    e.scale = s;
  }
  return e;
}

EntropyOrder entropy_compare(const ExactEntropy& a, const ExactEntropy& b) {
  if (a.zero || b.zero) return a.zero == b.zero ? EntropyOrder::Equal : EntropyOrder::NotEqual;
  FieldElement ma = multiplier(a), mb = multiplier(b);
  bool ra = fe_is_rational(*a.base), rb = fe_is_rational(*b.base);
  if (ra && rb) {
    // Normalized integer bases: distinct bases have irrational log ratio, so
    // algebraic multipliers can never bridge them.
    if (fe_to_rational(*a.base) != fe_to_rational(*b.base)) return EntropyOrder::NotEqual;
    return fe_same_real(ma, mb) ? EntropyOrder::Equal : EntropyOrder::NotEqual;
  }
  if (ra != rb) return EntropyOrder::NotEqual;  // irrational base has no rational power
  for (int p = 1; p <= 6; ++p)
    for (int q = 1; q <= 6; ++q)
      if (fe_same_real(fe_pow(*a.base, p), fe_pow(*b.base, q))) {
        // log(b1)/log(b2) = q/p, so the values agree iff q*ma == p*mb.
        return fe_same_real(fe_scale(ma, Rat(q)), fe_scale(mb, Rat(p)))
                   ? EntropyOrder::Equal
                   : EntropyOrder::NotEqual;
      }
  return EntropyOrder::Undecided;
}

double entropy_to_double(const ExactEntropy& e) {
  if (e.zero) return 0.0;
  double lb = fe_is_rational(*e.base) ? std::log(rat_to_double(fe_to_rational(*e.base)))
                                      : std::log(fe_to_double(*e.base));
  double m = rat_to_double(e.coefficient);
  if (e.scale) m *= fe_to_double(*e.scale);
  return m * lb;
}

// --- estimator --------------------------------------------------------------

namespace {

Rat pow2_inv(int k) { return Rat(Int(1), Int(1) << k); }  // already canonical

Rat rat_frac(const Rat& x) {
  Rat f = x - Rat(rat_floor(x));
  f.canonicalize();
  return f;
}

struct Scheme {
  int kappa = 0;
  long fibers = 0;
  std::vector<Rat> s;  // fiber sections in [0, 1)
};

// Fiber spacing h0/Q >= eps and window radius 2^-kappa >= eps make every
// cross-fiber and same-fiber candidate pair (n, eps)-separated by design;
// the audit re-checks that claim exactly.
Scheme scheme_for(const Rat& eps) {
  require(eps > 0 && eps <= 1, ErrorCode::ParseError, "eps must lie in (0, 1]");
  Scheme sc;
  while (pow2_inv(sc.kappa + 1) >= eps) ++sc.kappa;
  Int Q = rat_ceil(Rat(2) / eps) + 1;
  Int h0 = rat_ceil(eps * Rat(Q));
  Int f = floor_div(Q, h0);
  sc.fibers = f.get_si();
  for (long i = 0; i < sc.fibers; ++i) {
    Rat si(i * h0, Q);
    si.canonicalize();
    sc.s.push_back(si);
  }
  return sc;
}

long word_span(const Rat& s, long h, const Rat& t, int kappa) {
  Rat reach = s + Rat(h - 1) * t;
  return rat_floor(reach).get_si() + 2 * kappa + 1;
}

EstimateReport estimate_common(const std::function<Int(long)>& words_of_length,
                               const std::function<SeparationFamily()>& family, const Rat& t,
                               long n, const Rat& eps, bool audit) {
  require(n >= 1, ErrorCode::ParseError, "horizon must be at least 1");
  Rat at = t < 0 ? Rat(-t) : t;
  Scheme sc = scheme_for(eps);

  std::map<long, Int> cache;
  auto count_at = [&](long h) {
    Int c = 0;
    for (const Rat& s : sc.s) {
      long len = word_span(s, h, at, sc.kappa);
      auto it = cache.find(len);
      if (it == cache.end()) it = cache.emplace(len, words_of_length(len)).first;
      c += it->second;
    }
    return c;
  };

  EstimateReport rep;
  rep.n = n;
  rep.t = t;
  rep.eps = eps;
  rep.fibers = sc.fibers;
  long half = (n + 1) / 2;
  rep.count_full = count_at(n);
  rep.count_half = count_at(half);
  rep.estimate =
      n == 1 ? 0.0
             : (ln_int(rep.count_full) - ln_int(rep.count_half)) / static_cast<double>(n - half);

  if (audit) {
    SeparationFamily fam = family();
    require(Int(static_cast<long>(fam.words.size())) == rep.count_full, ErrorCode::Internal,
            "audit enumeration disagrees with the counting formula");
    SeparationCheck chk = verify_separation_parallel(fam);
    rep.audited = true;
    rep.candidates = static_cast<long>(fam.words.size());
    rep.separated = chk.separated;
    rep.min_distance = chk.min_distance;
  }
  return rep;
}

struct EdgeAlphabet {
  std::vector<int> from, to;
};

EdgeAlphabet edge_alphabet(const IntMatrix& adj) {
  EdgeAlphabet e;
  for (int u = 0; u < adj.rows; ++u)
    for (int v = 0; v < adj.cols; ++v)
      for (Int c = 0; c < adj.at(u, v); ++c) {
        e.from.push_back(u);
        e.to.push_back(v);
      }
  require(e.from.size() <= 200, ErrorCode::ParseError, "too many edges for word enumeration");
  return e;
}

Int sum_entries(const IntMatrix& m) {
  Int s = 0;
  for (const Int& x : m.a) s += x;
  return s;
}

// Shared family layout: per fiber, every length-len word extended to the
// lexicographically least word of length len + 2*pad around it.
SeparationFamily family_scaffold(const Scheme& sc, const Rat& at, long n, const Rat& eps) {
  SeparationFamily fam;
  fam.n = n;
  fam.kappa = sc.kappa;
  fam.delta = eps / 2;
  fam.delta.canonicalize();
  fam.origin = sc.kappa + (sc.kappa + 3);
  fam.fiber_pos = sc.s;
  for (const Rat& s : sc.s) {
    std::vector<long> sh;
    std::vector<Rat> fr;
    for (long j = 0; j < n; ++j) {
      Rat pos = s + Rat(j) * at;
      sh.push_back(rat_floor(pos).get_si());
      fr.push_back(rat_frac(pos));
    }
    fam.shifts.push_back(std::move(sh));
    fam.fracs.push_back(std::move(fr));
  }
  return fam;
}

}  // namespace

SeparationFamily separation_family(const Sft& base, const Rat& t, long n, const Rat& eps,
                                   long budget) {
  require(check_primitive(base.adjacency), ErrorCode::NotPrimitive,
          "adjacency matrix must be primitive");
  require(budget >= 1, ErrorCode::ParseError, "budget must be positive");
  Rat at = t < 0 ? Rat(-t) : t;
  Scheme sc = scheme_for(eps);
  SeparationFamily fam = family_scaffold(sc, at, n, eps);
  EdgeAlphabet ea = edge_alphabet(base.adjacency);
  int pad = sc.kappa + 3;

  // Enumeration cost is known in advance from matrix powers.
  Int predicted = 0;
  for (const Rat& s : sc.s) {
    long ext = word_span(s, n, at, sc.kappa) + 2 * pad;
    predicted += sum_entries(mat_pow(base.adjacency, static_cast<unsigned long>(ext)));
  }
  require(predicted <= budget, ErrorCode::HorizonTooLarge,
          "word enumeration exceeds the budget (" + to_string(predicted) + " paths)");

  int ne = static_cast<int>(ea.from.size());
  for (std::size_t fi = 0; fi < sc.s.size(); ++fi) {
    long len = word_span(sc.s[fi], n, at, sc.kappa);
    long ext = len + 2 * pad;
    std::map<std::string, std::string> rep;  // central window -> least extension
    std::string path;
    // Depth-first in edge-id order: the first extension seen per window is the
    // lexicographically least one.
    std::function<void()> dfs = [&] {
      if (static_cast<long>(path.size()) == ext) {
        rep.emplace(path.substr(static_cast<std::size_t>(pad), static_cast<std::size_t>(len)),
                    path);
        return;
      }
      for (int e = 0; e < ne; ++e) {
        if (!path.empty() && ea.to[static_cast<std::size_t>(path.back())] !=
                                 ea.from[static_cast<std::size_t>(e)])
          continue;
        path.push_back(static_cast<char>(e));
        dfs();
        path.pop_back();
      }
    };
    dfs();
    for (auto& [window, extension] : rep) {
      fam.words.push_back(extension);
      fam.fiber.push_back(static_cast<int>(fi));
    }
  }
  return fam;
}

SeparationFamily separation_family(const Substitution& base, const Rat& t, long n,
                                   const Rat& eps, long budget) {
  require(budget >= 1, ErrorCode::ParseError, "budget must be positive");
  Rat at = t < 0 ? Rat(-t) : t;
  Scheme sc = scheme_for(eps);
  SeparationFamily fam = family_scaffold(sc, at, n, eps);
  int pad = sc.kappa + 3;

  for (std::size_t fi = 0; fi < sc.s.size(); ++fi) {
    long len = word_span(sc.s[fi], n, at, sc.kappa);
    long ext = len + 2 * pad;
    std::vector<std::string> all = substitution_factors(base, static_cast<int>(ext));
    require(static_cast<long>(all.size()) <= budget, ErrorCode::HorizonTooLarge,
            "word enumeration exceeds the budget");
    std::map<std::string, std::string> rep;
    for (const std::string& w : all)  // sorted, so first occurrence is least
      rep.emplace(w.substr(static_cast<std::size_t>(pad), static_cast<std::size_t>(len)), w);
    for (auto& [window, extension] : rep) {
      fam.words.push_back(extension);
      fam.fiber.push_back(static_cast<int>(fi));
    }
  }
  return fam;
}

namespace {

// Exact time-n separation of two candidates: at each step the seam metric
// compares the aligned words around the current base position, against each of
// the three fiber alignments (no wrap, wrap up, wrap down).
Rat pair_distance(const SeparationFamily& f, std::size_t x, std::size_t y) {
  const std::string& u = f.words[x];
  const std::string& v = f.words[y];
  const auto& su = f.shifts[static_cast<std::size_t>(f.fiber[x])];
  const auto& sv = f.shifts[static_cast<std::size_t>(f.fiber[y])];
  const auto& fu = f.fracs[static_cast<std::size_t>(f.fiber[x])];
  const auto& fv = f.fracs[static_cast<std::size_t>(f.fiber[y])];
  int cap = f.kappa + 2;
  Rat best(0);
  for (long j = 0; j < f.n; ++j) {
    long au = f.origin + su[static_cast<std::size_t>(j)];
    long av = f.origin + sv[static_cast<std::size_t>(j)];
    Rat du = fu[static_cast<std::size_t>(j)] - fv[static_cast<std::size_t>(j)];
    Rat dj;
    bool first = true;
    for (int o = -1; o <= 1; ++o) {
      int rho = cap;
      for (int r = 0; r < cap; ++r) {
        if (u[static_cast<std::size_t>(au + r)] != v[static_cast<std::size_t>(av + o + r)] ||
            u[static_cast<std::size_t>(au - r)] != v[static_cast<std::size_t>(av + o - r)]) {
          rho = r;
          break;
        }
      }
      Rat gap = du - Rat(o);
      if (gap < 0) gap = -gap;
      Rat cand = std::max(pow2_inv(rho), gap);
      if (first || cand < dj) {
        dj = cand;
        first = false;
      }
    }
    if (dj > best) best = dj;
  }
  return best;
}

template <bool Parallel>
SeparationCheck verify_separation(const SeparationFamily& fam) {
  SeparationCheck chk;
  const long nw = static_cast<long>(fam.words.size());
  chk.pairs = nw * (nw - 1) / 2;
  chk.min_distance = Rat(0);
  if (nw < 2) return chk;

#if defined(_OPENMP)
  int threads = Parallel ? omp_get_max_threads() : 1;
#else
  int threads = 1;
#endif
  std::vector<Rat> local(static_cast<std::size_t>(threads));
  std::vector<char> seen(static_cast<std::size_t>(threads), 0);  // char: no bit packing

#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads) if (Parallel)
#endif
  for (long i = 0; i < nw - 1; ++i) {
#if defined(_OPENMP)
    std::size_t tid = static_cast<std::size_t>(omp_get_thread_num());
#else
    std::size_t tid = 0;
#endif
    for (long j = i + 1; j < nw; ++j) {
      Rat d = pair_distance(fam, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (!seen[tid] || d < local[tid]) {
        local[tid] = d;
        seen[tid] = 1;
      }
    }
  }

  bool any = false;
  Rat global(0);
  for (std::size_t tid = 0; tid < local.size(); ++tid) {
    if (!seen[tid]) continue;
    if (!any || local[tid] < global) global = local[tid];
    any = true;
  }
  chk.min_distance = global;
  chk.separated = global >= fam.delta;
  return chk;
}

}  // namespace

SeparationCheck verify_separation_serial(const SeparationFamily& fam) {
  return verify_separation<false>(fam);
}

SeparationCheck verify_separation_parallel(const SeparationFamily& fam) {
  return verify_separation<true>(fam);
}

EstimateReport estimate_suspension_entropy(const Sft& base, const Rat& t, long n,
                                           const Rat& eps, long budget, bool audit) {
  require(check_primitive(base.adjacency), ErrorCode::NotPrimitive,
          "adjacency matrix must be primitive");
  require(budget >= 1, ErrorCode::ParseError, "budget must be positive");
  auto words_of_length = [&](long len) {
    return sum_entries(mat_pow(base.adjacency, static_cast<unsigned long>(len)));
  };
  auto family = [&] { return separation_family(base, t, n, eps, budget); };
  return estimate_common(words_of_length, family, t, n, eps, audit);
}

EstimateReport estimate_suspension_entropy(const Substitution& base, const Rat& t, long n,
                                           const Rat& eps, long budget, bool audit) {
  require(budget >= 1, ErrorCode::ParseError, "budget must be positive");
  auto words_of_length = [&](long len) {
    long c = factor_complexity(base, static_cast<int>(len));
    require(c <= budget, ErrorCode::HorizonTooLarge, "word enumeration exceeds the budget");
    return Int(c);
  };
  auto family = [&] { return separation_family(base, t, n, eps, budget); };
  return estimate_common(words_of_length, family, t, n, eps, audit);
}

// --- invariant measure ------------------------------------------------------

namespace {

FieldElement substitution_cylinder_measure(const Substitution& s, const std::string& w) {
  require(word_is_factor(s, w), ErrorCode::IllegalWord,
          "'" + w + "' is not in the substitution language");
  int len = static_cast<int>(w.size());
  std::vector<std::string> blocks = substitution_factors(s, len);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    index[blocks[i]] = static_cast<int>(i);

  // Induced substitution on length-len blocks: the block starting at position
  // p maps to the blocks starting at the first |rule(first letter)| positions
  // of its image; the image is long enough because every later letter
  // contributes at least one symbol.
  int nb = static_cast<int>(blocks.size());
  IntMatrix induced(nb, nb);
  for (int j = 0; j < nb; ++j) {
    std::string img = s.apply(blocks[static_cast<std::size_t>(j)]);
    std::size_t span = s.rule(blocks[static_cast<std::size_t>(j)][0]).size();
    for (std::size_t p = 0; p < span; ++p) {
      std::string block = img.substr(p, static_cast<std::size_t>(len));
      require(static_cast<int>(block.size()) == len, ErrorCode::Internal,
              "induced block image too short");
      induced.at(index.at(block), j) += 1;
    }
  }

  PerronData pd = perron_data(induced);
  FieldElement total = fe_zero(pd.field);
  for (const FieldElement& x : pd.right) total = fe_add(total, x);
  return fe_div(pd.right[static_cast<std::size_t>(index.at(w))], total);
}

}  // namespace

FieldElement suspension_measure(const BaseSystem& base, const Cylinder& cyl, const Rat& a,
                                const Rat& b) {
  require(a >= 0 && a <= b && b <= 1, ErrorCode::ParseError,
          "interval must satisfy 0 <= a <= b <= 1");
  Rat len = b - a;
  len.canonicalize();

  if (std::holds_alternative<PointSystem>(base)) {
    require(cyl.word.empty() && cyl.digits.empty(), ErrorCode::IllegalWord,
            "the one-point base has only the empty cylinder");
    return fe_rat(len);
  }
  if (const Odometer* o = std::get_if<Odometer>(&base)) {
    require(cyl.word.empty(), ErrorCode::IllegalWord, "odometer cylinders are digit strings");
    Rat mu(1);
    for (std::size_t i = 0; i < cyl.digits.size(); ++i) {
      long radix = o->bases[i % o->bases.size()];
      require(cyl.digits[i] >= 0 && cyl.digits[i] < radix, ErrorCode::IllegalWord,
              "digit out of range for its level");
      mu /= radix;
      mu.canonicalize();
    }
    return fe_rat(mu * len);
  }
  const Substitution& s = std::get<Substitution>(base);
  require(cyl.digits.empty(), ErrorCode::IllegalWord, "substitution cylinders are words");
  if (cyl.word.empty()) return fe_rat(len);
  return fe_scale(substitution_cylinder_measure(s, cyl.word), len);
}

}  // namespace suspk
