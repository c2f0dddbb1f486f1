#include "henselkit/truncated.hpp"

namespace henselkit {

namespace {

struct affine_solutions {
  bool consistent = true;
  std::vector<field_elem> x0;
  std::vector<std::vector<field_elem>> null_basis;
};

// Row-reduce A x = b over the coefficient field.
affine_solutions solve_affine(const field_desc& fd, std::vector<std::vector<field_elem>> A,
                              std::vector<field_elem> b) {
  size_t m = A.size();
  size_t n = m ? A[0].size() : 0;
  std::vector<long> pivot_of_col(n, -1);
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t piv = row;
    while (piv < m && A[piv][col].is_zero()) ++piv;
    if (piv == m) continue;
    std::swap(A[piv], A[row]);
    std::swap(b[piv], b[row]);
    field_elem inv = A[row][col].inverse();
    for (size_t j = col; j < n; ++j) A[row][j] = A[row][j] * inv;
    b[row] = b[row] * inv;
    for (size_t r = 0; r < m; ++r) {
      if (r == row || A[r][col].is_zero()) continue;
      field_elem f = A[r][col];
      for (size_t j = col; j < n; ++j) A[r][j] = A[r][j] - f * A[row][j];
      b[r] = b[r] - f * b[row];
    }
    pivot_of_col[col] = static_cast<long>(row);
    ++row;
  }
  affine_solutions out;
  for (size_t r = row; r < m; ++r)
    if (!b[r].is_zero()) {
      out.consistent = false;
      return out;
    }
  out.x0.assign(n, field_elem::zero(fd));
  for (size_t col = 0; col < n; ++col)
    if (pivot_of_col[col] >= 0) out.x0[col] = b[static_cast<size_t>(pivot_of_col[col])];
  for (size_t fc = 0; fc < n; ++fc) {
    if (pivot_of_col[fc] >= 0) continue;
    std::vector<field_elem> v(n, field_elem::zero(fd));
    v[fc] = field_elem::one(fd);
    for (size_t pc = 0; pc < n; ++pc)
      if (pivot_of_col[pc] >= 0) v[pc] = -A[static_cast<size_t>(pivot_of_col[pc])][fc];
    out.null_basis.push_back(std::move(v));
  }
  return out;
}

std::vector<field_elem> q_pool(const field_desc& fd) {
  std::vector<field_elem> pool;
  for (long v : {0L, 1L, -1L, 2L, -2L, 3L, -3L}) pool.push_back(field_elem(fd, v));
  return pool;
}

struct dfs_ctx {
  const poly_system* F = nullptr;
  const trunc_options* opt = nullptr;
  trunc_result* out = nullptr;
  field_desc fd;
  size_t n = 0;
  long L = 0;
  std::vector<std::vector<series_poly>> partials; // [poly][var]
  std::vector<std::map<long, field_elem>> coords;
  bool stop = false;

  std::vector<puiseux_series> point() const {
    std::vector<puiseux_series> x;
    x.reserve(n);
    for (const auto& terms : coords)
      x.push_back(puiseux_series(fd, opt->q, terms, xrat::infinity()));
    return x;
  }

  bool spend() {
    ++out->checked;
    if (out->checked > opt->budget) {
      out->exhaustive = false;
      out->note = "evaluation budget exhausted";
      stop = true;
      return false;
    }
    return true;
  }
};

bool residual_at_least(dfs_ctx& ctx, const rat& level_val) {
  if (!ctx.spend()) return false;
  return residual_val(*ctx.F, ctx.point()).lower_bound() >= xrat(level_val);
}

void record_solution(dfs_ctx& ctx) {
  std::vector<puiseux_series> x;
  for (const auto& terms : ctx.coords)
    x.push_back(normalize_ram(puiseux_series(ctx.fd, ctx.opt->q, terms, xrat::infinity())));
  ctx.out->solutions.push_back(std::move(x));
  if (ctx.out->solutions.size() >= ctx.opt->max_solutions) {
    ctx.out->exhaustive = false;
    ctx.out->note = "solution cap reached";
    ctx.stop = true;
  }
}

void dfs(dfs_ctx& ctx, long level);

// Try one coefficient vector at `level` and descend when the congruence at
// the next level still holds.
void try_assignment(dfs_ctx& ctx, long level, const std::vector<field_elem>& a) {
  if (ctx.stop) return;
  for (size_t j = 0; j < ctx.n; ++j)
    if (!a[j].is_zero()) ctx.coords[j][level] = a[j];
  if (residual_at_least(ctx, frac(level + 1, ctx.opt->q))) dfs(ctx, level + 1);
  for (size_t j = 0; j < ctx.n; ++j) ctx.coords[j].erase(level);
}

void level_zero(dfs_ctx& ctx) {
  const field_desc& fd = ctx.fd;
  if (fd.kind == field_kind::prime_field) {
    // full residue enumeration
    std::vector<field_elem> a(ctx.n, field_elem::zero(fd));
    std::vector<unsigned long> digits(ctx.n, 0);
    while (!ctx.stop) {
      bool zerovec = true;
      for (size_t j = 0; j < ctx.n; ++j) {
        a[j] = field_elem(fd, static_cast<long>(digits[j]));
        if (digits[j]) zerovec = false;
      }
      if (!(ctx.opt->primitive && zerovec)) try_assignment(ctx, 0, a);
      size_t j = 0;
      while (j < ctx.n && ++digits[j] == fd.p) digits[j++] = 0;
      if (j == ctx.n) break;
    }
    return;
  }
  // Over Q: a single univariate equation has an exhaustive residue-root
  // search; everything else falls back to a sample pool.
  if (ctx.n == 1) {
    std::vector<field_elem> rcoeffs;
    bool have = false;
    for (const auto& f : ctx.F->polys) {
      auto cs = univar_coeffs(f);
      std::vector<field_elem> rc;
      bool nonzero = false;
      for (const auto& c : cs) {
        valuation v = val(c);
        field_elem r = field_elem::zero(fd);
        if (v.finite && v.value == 0) r = c.leading_coeff();
        if (!r.is_zero()) nonzero = true;
        rc.push_back(r);
      }
      if (nonzero) {
        rcoeffs = rc;
        have = true;
        break;
      }
    }
    if (have) {
      auto roots = ctx.opt->roots(fd, rcoeffs);
      for (const auto& r : roots) {
        if (ctx.stop) break;
        if (ctx.opt->primitive && r.is_zero()) continue;
        try_assignment(ctx, 0, {r});
      }
      return;
    }
    ctx.out->exhaustive = false;
    ctx.out->note = "free residue level over Q sampled from a pool";
    for (const auto& r : q_pool(fd)) {
      if (ctx.stop) break;
      if (ctx.opt->primitive && r.is_zero()) continue;
      try_assignment(ctx, 0, {r});
    }
    return;
  }
  ctx.out->exhaustive = false;
  ctx.out->note = "residue level over Q sampled from a pool";
  auto pool = q_pool(fd);
  std::vector<size_t> digits(ctx.n, 0);
  std::vector<field_elem> a(ctx.n, field_elem::zero(fd));
  while (!ctx.stop) {
    bool zerovec = true;
    for (size_t j = 0; j < ctx.n; ++j) {
      a[j] = pool[digits[j]];
      if (!a[j].is_zero()) zerovec = false;
    }
    if (!(ctx.opt->primitive && zerovec)) try_assignment(ctx, 0, a);
    size_t j = 0;
    while (j < ctx.n && ++digits[j] == pool.size()) digits[j++] = 0;
    if (j == ctx.n) break;
  }
}

// At level >= 1 the new coefficient vector enters the congruence linearly:
// obstruction + Jbar * a = 0 over the residue field.
void level_linear(dfs_ctx& ctx, long level) {
  auto P = ctx.point();
  if (!ctx.spend()) return;
  auto ev = eval_system(*ctx.F, P);
  size_t m = ev.size();
  std::vector<field_elem> b(m, field_elem::zero(ctx.fd));
  for (size_t i = 0; i < m; ++i) b[i] = ev[i].coeff_at(frac(level, ctx.opt->q));
  std::vector<std::vector<field_elem>> Jbar(m,
                                            std::vector<field_elem>(ctx.n, field_elem::zero(ctx.fd)));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < ctx.n; ++j)
      Jbar[i][j] = eval_poly(ctx.partials[i][j], P).coeff_at(rat(0));
  for (auto& bi : b) bi = -bi;
  affine_solutions sols = solve_affine(ctx.fd, Jbar, b);
  if (!sols.consistent) return;
  size_t d = sols.null_basis.size();
  if (d == 0) {
    try_assignment(ctx, level, sols.x0);
    return;
  }
  if (ctx.fd.kind == field_kind::prime_field) {
    std::vector<unsigned long> digits(d, 0);
    while (!ctx.stop) {
      std::vector<field_elem> a = sols.x0;
      for (size_t k = 0; k < d; ++k) {
        field_elem lam(ctx.fd, static_cast<long>(digits[k]));
        for (size_t j = 0; j < ctx.n; ++j) a[j] = a[j] + lam * sols.null_basis[k][j];
      }
      try_assignment(ctx, level, a);
      size_t k = 0;
      while (k < d && ++digits[k] == ctx.fd.p) digits[k++] = 0;
      if (k == d) break;
    }
    return;
  }
  ctx.out->exhaustive = false;
  ctx.out->note = "free linear direction over Q sampled from a pool";
  auto pool = q_pool(ctx.fd);
  std::vector<size_t> digits(d, 0);
  while (!ctx.stop) {
    std::vector<field_elem> a = sols.x0;
    for (size_t k = 0; k < d; ++k)
      for (size_t j = 0; j < ctx.n; ++j) a[j] = a[j] + pool[digits[k]] * sols.null_basis[k][j];
    try_assignment(ctx, level, a);
    size_t k = 0;
    while (k < d && ++digits[k] == pool.size()) digits[k++] = 0;
    if (k == d) break;
  }
}

void dfs(dfs_ctx& ctx, long level) {
  if (ctx.stop) return;
  if (level == ctx.L) {
    record_solution(ctx);
    return;
  }
  if (level == 0)
    level_zero(ctx);
  else
    level_linear(ctx, level);
}

} // namespace

trunc_result truncated_solutions(const poly_system& F, const trunc_options& opt) {
  F.validate();
  if (opt.nu <= 0) throw precondition_violated("congruence level must be positive");
  if (opt.q < 1) throw precondition_violated("ramification grid must be >= 1");
  for (const auto& f : F.polys) {
    for (const auto& [idx, c] : f.terms()) {
      (void)idx;
      if (val(c).lower_bound() < xrat(0))
        throw precondition_violated("coefficients must be integral for the level pruning");
      if (c.has_terms()) {
        for (const auto& [k, ce] : c.terms()) {
          (void)ce;
          // exponent k / ram must land on the 1/q grid
          rat e = frac(k, c.ram_index()) * opt.q;
          if (!is_integral(e))
            throw precondition_violated("coefficient exponents must lie on the t^{1/q} grid");
        }
      }
    }
  }

  trunc_result out;
  out.exhaustive = true;

  dfs_ctx ctx;
  ctx.F = &F;
  ctx.opt = &opt;
  ctx.out = &out;
  ctx.fd = F.field();
  ctx.n = F.n_vars();
  ctx.L = ceil_long(opt.nu * rat(opt.q));
  ctx.coords.assign(ctx.n, {});
  ctx.partials.resize(F.polys.size());
  for (size_t i = 0; i < F.polys.size(); ++i)
    for (size_t j = 0; j < ctx.n; ++j) ctx.partials[i].push_back(partial(F.polys[i], j));

  try {
    dfs(ctx, 0);
  } catch (const precision_too_low&) {
    out.exhaustive = false;
    out.note = "coefficient precision below the requested level";
  }
  return out;
}

} // namespace henselkit
