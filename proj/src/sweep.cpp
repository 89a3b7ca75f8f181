#include "lppshock/sweep.hpp"

#include <algorithm>
#include <stdexcept>

#include "lppshock/simd/kernels.hpp"

namespace lppshock {

DiagonalSweep::DiagonalSweep(const RateField& field, const SeedPlan& plan, std::vector<SweepField> fields)
    : rates_(field), plan_(plan) {
  if (fields.empty()) throw std::invalid_argument("sweep needs at least one field");
  std::int64_t imin = fields.front().rect.i0, imax = fields.front().rect.i1;
  d_begin_ = fields.front().rect.i0 + fields.front().rect.j0;
  d_end_ = fields.front().rect.i1 + fields.front().rect.j1;
  for (auto& spec : fields) {
    if (spec.rect.empty()) throw std::invalid_argument("sweep field with empty rectangle");
    State st;
    st.spec = spec;
    const auto width = static_cast<std::size_t>(spec.rect.width());
    for (auto& b : st.buf) b.assign(width + 2, kUnreachable);
    st.lo[0] = st.lo[1] = 1;
    st.hi[0] = st.hi[1] = 0;
    const std::int64_t base = spec.rect.i0 + spec.rect.j0;
    const auto ndiag = static_cast<std::size_t>(spec.rect.i1 + spec.rect.j1 - base + 1);
    st.starts_by_diag.resize(ndiag);
    for (const Site& s : spec.start.points())
      if (spec.rect.contains(s)) st.starts_by_diag[static_cast<std::size_t>(s.i + s.j - base)].push_back(s.i);
    if (spec.record_argmax) {
      st.arg.reserve(spec.rect.size());
      st.arg_off.assign(ndiag, 0);
      st.arg_lo.assign(ndiag, 0);
    }
    imin = std::min(imin, spec.rect.i0);
    imax = std::max(imax, spec.rect.i1);
    d_begin_ = std::min(d_begin_, base);
    d_end_ = std::max(d_end_, spec.rect.i1 + spec.rect.j1);
    fields_.push_back(std::move(st));
  }
  wbuf_.assign(static_cast<std::size_t>(imax - imin + 4), 0.0);
  // diagonals below the first start site hold only unreachable values
  bool any_start = false;
  std::int64_t first_start = 0;
  for (const State& st : fields_)
    for (const Site& s : st.spec.start.points())
      if (st.spec.rect.contains(s)) {
        first_start = any_start ? std::min(first_start, s.i + s.j) : s.i + s.j;
        any_start = true;
      }
  if (any_start) d_begin_ = std::max(d_begin_, first_start);
  d_ = d_begin_ - 1;
}

bool DiagonalSweep::step() {
  const std::int64_t d = d_ + 1;
  if (d > d_end_) return false;
  const auto& k = simd::active_kernels();

  std::int64_t wl = 0, wh = -1;
  for (const State& st : fields_) {
    const Rect& r = st.spec.rect;
    const std::int64_t l = std::max(r.i0, d - r.j1), h = std::min(r.i1, d - r.j0);
    if (l > h) continue;
    if (wl > wh) {
      wl = l;
      wh = h;
    } else {
      wl = std::min(wl, l);
      wh = std::max(wh, h);
    }
  }
  const double* w = wl <= wh ? diagonal_weights(rates_, plan_, d, wl, wh, wbuf_.data()) : nullptr;

  const std::size_t s = slot(d);
  for (State& st : fields_) {
    const Rect& r = st.spec.rect;
    const std::int64_t l = std::max(r.i0, d - r.j1), h = std::min(r.i1, d - r.j0);
    std::vector<double>& out = st.buf[s];
    const std::vector<double>& prev = st.buf[1 - s];
    // the buffer still holds diagonal d-2; clear what the new range does not overwrite
    if (st.lo[s] <= st.hi[s]) {
      if (l > h) {
        std::fill(out.begin() + static_cast<std::ptrdiff_t>(idx(st, st.lo[s])),
                  out.begin() + static_cast<std::ptrdiff_t>(idx(st, st.hi[s]) + 1), kUnreachable);
      } else {
        for (std::int64_t i = st.lo[s]; i <= std::min(st.hi[s], l - 1); ++i) out[idx(st, i)] = kUnreachable;
        for (std::int64_t i = std::max(st.lo[s], h + 1); i <= st.hi[s]; ++i) out[idx(st, i)] = kUnreachable;
      }
    }
    st.lo[s] = l;
    st.hi[s] = h;
    if (l > h) continue;
    const auto n = static_cast<std::size_t>(h - l + 1);
    const double* left = prev.data() + idx(st, l - 1);
    const double* down = prev.data() + idx(st, l);
    double* o = out.data() + idx(st, l);
    const std::size_t di = static_cast<std::size_t>(d - (r.i0 + r.j0));
    std::uint8_t* arg = nullptr;
    if (st.spec.record_argmax) {
      st.arg_off[di] = st.arg.size();
      st.arg_lo[di] = l;
      st.arg.resize(st.arg.size() + n);
      arg = st.arg.data() + st.arg_off[di];
      k.maxplus_arg(left, down, w + (l - wl), o, arg, n);
    } else {
      k.maxplus(left, down, w + (l - wl), o, n);
    }
    for (const std::int64_t i : st.starts_by_diag[di]) {
      const double pred = std::max(prev[idx(st, i - 1)], prev[idx(st, i)]);
      out[idx(st, i)] = st.spec.start_weight == StartWeight::included ? std::max(0.0, pred) + w[i - wl]
                                                                      : std::max(0.0, pred);
      if (arg != nullptr && !(pred > 0.0)) arg[i - l] = 2;
    }
  }
  d_ = d;
  return true;
}

double DiagonalSweep::value(std::size_t f, Site p) const {
  const std::int64_t d = p.i + p.j;
  if (d != d_ && d != d_ - 1) throw std::logic_error("sweep value requested off the live diagonals");
  const State& st = fields_.at(f);
  if (!st.spec.rect.contains(p)) return kUnreachable;
  return st.buf[slot(d)][idx(st, p.i)];
}

LatticePath DiagonalSweep::backtrack(std::size_t f, Site end) const {
  const State& st = fields_.at(f);
  if (!st.spec.record_argmax) throw std::logic_error("backtrack needs record_argmax");
  if (end.i + end.j > d_) throw std::logic_error("backtrack beyond the swept diagonals");
  const Rect& r = st.spec.rect;
  const std::int64_t base = r.i0 + r.j0;
  std::vector<Site> rev;
  Site p = end;
  while (true) {
    if (!r.contains(p)) throw NoPathError("backtrack left the field; endpoint unreachable");
    rev.push_back(p);
    const auto di = static_cast<std::size_t>(p.i + p.j - base);
    const std::uint8_t a = st.arg[st.arg_off[di] + static_cast<std::size_t>(p.i - st.arg_lo[di])];
    if (a == 2) break;
    p = a == 1 ? Site{p.i - 1, p.j} : Site{p.i, p.j - 1};
  }
  std::reverse(rev.begin(), rev.end());
  return LatticePath{std::move(rev)};
}

}  // namespace lppshock
