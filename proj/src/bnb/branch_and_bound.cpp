// SPDX-License-Identifier: Apache-2.0
#include "spark/bnb/branch_and_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spark::bnb {

namespace {

using Wide = __int128;

std::int64_t floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<std::int64_t>(std::clamp<Wide>(q, INT64_MIN / 4, INT64_MAX / 4));
}

std::int64_t ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

double frac_part(double v) { return v - std::floor(v); }

/// Objective in maximization form: +F for Max, -F for Min.
double max_form(const IlpProblem& p, std::span<const double> x) {
  double f = 0;
  for (std::size_t j = 0; j < p.n(); ++j) f += static_cast<double>(p.cost[j]) * x[j];
  return p.sense == Sense::Max ? f : -f;
}

bool better(Sense sense, const Rational& a, const Rational& b) {
  return sense == Sense::Max ? a > b : a < b;
}

/// True when the node bound proves the subtree cannot beat `value`.
bool dominated(Sense sense, const std::optional<Rational>& bound, const Rational& value) {
  if (!bound) return false;
  return sense == Sense::Max ? *bound <= value : *bound >= value;
}

std::optional<Rational> tighter(Sense sense, const std::optional<Rational>& a,
                                const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return sense == Sense::Max ? std::min(*a, *b) : std::max(*a, *b);
}

}  // namespace

sle::SleResult ReferenceBackend::relax(const IlpProblem&, const sle::SquareSystem& system) {
  return sle::solve_sle(system, epsilon_, max_iters_);
}

bool propagate(const IlpProblem& p, std::vector<Domain>& box) {
  const std::size_t n = p.n();
  for (int pass = 0; pass < 32; ++pass) {
    bool changed = false;
    for (const auto& row : p.constraints) {
      Wide finite = 0;
      std::size_t infinite = 0;
      std::size_t infinite_var = n;
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t a = row.coeffs[j];
        if (a > 0) {
          finite += static_cast<Wide>(a) * box[j].lo;
        } else if (a < 0) {
          if (box[j].hi) {
            finite += static_cast<Wide>(a) * *box[j].hi;
          } else {
            ++infinite;
            infinite_var = j;
          }
        }
      }
      if (infinite == 0 && finite > row.rhs) return false;
      if (infinite > 1) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t a = row.coeffs[j];
        if (a == 0) continue;
        Wide others;
        if (infinite == 1) {
          if (j != infinite_var) continue;
          others = finite;
        } else {
          const Wide own = a > 0 ? static_cast<Wide>(a) * box[j].lo
                                 : static_cast<Wide>(a) * *box[j].hi;
          others = finite - own;
        }
        const Wide slack = static_cast<Wide>(row.rhs) - others;
        if (a > 0) {
          const std::int64_t hi = floor_div(slack, a);
          if (!box[j].hi || hi < *box[j].hi) {
            box[j].hi = hi;
            changed = true;
          }
        } else {
          const std::int64_t lo = ceil_div(slack, a);
          if (lo > box[j].lo) {
            box[j].lo = lo;
            changed = true;
          }
        }
        if (box[j].empty()) return false;
      }
    }
    if (!changed) break;
  }
  return true;
}

std::optional<Rational> box_bound(const IlpProblem& p, const std::vector<Domain>& box) {
  const std::size_t n = p.n();
  const double sign = p.sense == Sense::Max ? 1.0 : -1.0;
  // Lagrangian value of one row at multiplier t; infinity when a variable
  // with positive reduced profit is unbounded.
  auto lagrangian = [&](const Constraint* row, double t) {
    double value = row ? t * static_cast<double>(row->rhs) : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = row ? static_cast<double>(row->coeffs[j]) : 0.0;
      const double reduced = sign * static_cast<double>(p.cost[j]) - t * a;
      const double at_lo = reduced * static_cast<double>(box[j].lo);
      if (box[j].hi) {
        value += std::max(at_lo, reduced * static_cast<double>(*box[j].hi));
      } else if (reduced > 0) {
        return std::numeric_limits<double>::infinity();
      } else {
        value += at_lo;
      }
    }
    return value;
  };
  double best = lagrangian(nullptr, 0.0);
  for (const auto& row : p.constraints) {
    for (std::size_t j = 0; j < n; ++j) {
      if (row.coeffs[j] == 0) continue;
      const double t = sign * static_cast<double>(p.cost[j]) / static_cast<double>(row.coeffs[j]);
      if (t > 0) best = std::min(best, lagrangian(&row, t));
    }
  }
  if (!std::isfinite(best)) return std::nullopt;
  const double bound = std::floor(best + 1e-7 * (1.0 + std::abs(best)));
  const Rational r(static_cast<std::int64_t>(bound));
  return p.sense == Sense::Max ? r : Rational(-r);
}

BnbState init_bounds(const IlpProblem& p, const Solution& relaxed) {
  if (relaxed.status != Status::Optimal || relaxed.x.size() != p.n()) {
    throw BnbError("root relaxation did not converge");
  }
  BnbState st;
  st.sense = p.sense;
  const Rational f = evaluate_objective(p, relaxed.x);
  BnbNode root;
  root.box.assign(p.n(), Domain{});
  root.local_bound = p.sense == Sense::Min ? ceil_rational(f) : floor_rational(f);
  root.estimate = root.local_bound;
  for (const auto& v : relaxed.x) root.relaxed_x.push_back(to_double(v));
  root.relax_status = Status::Optimal;
  st.stats.created = 1;
  st.stats.created_per_level.assign(1, 1);
  st.stats.fathomed_per_level.assign(1, 0);
  st.next_id = 1;

  if (check_feasibility(p, relaxed.x).feasible) {
    st.incumbent = make_solution(p, Status::Optimal, relaxed.x);
    st.global_bound = st.incumbent->objective;
    st.solved_at_root = true;
    st.stats.rule_fired[0] = 1;
    st.stats.fathomed = 1;
    st.stats.fathomed_per_level[0] = 1;
    return st;
  }
  std::vector<Rational> rounded;
  for (const auto& v : relaxed.x) {
    Rational r = p.sense == Sense::Min ? ceil_rational(v) : floor_rational(v);
    rounded.push_back(r < 0 ? Rational(0) : r);
  }
  if (check_feasibility(p, rounded).feasible) {
    st.incumbent = make_solution(p, Status::Optimal, rounded);
    st.global_bound = st.incumbent->objective;
  }
  st.open.push_back(std::move(root));
  st.stats.open = 1;
  return st;
}

std::size_t select_branch_variable(std::span<const double> x, BranchRule rule, double tol) {
  std::optional<std::size_t> pick;
  double pick_frac = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double f = frac_part(x[j]);
    if (f <= tol || f >= 1.0 - tol) continue;
    const bool wins = !pick || (rule == BranchRule::HighestFraction ? f > pick_frac : f < pick_frac);
    if (wins) {
      pick = j;
      pick_frac = f;
    }
  }
  if (!pick) throw BnbError("no fractional component to branch on");
  return *pick;
}

std::size_t select_branch_node(const BnbState& st) {
  if (st.open.empty()) throw BnbError("branching complete: open queue is empty");
  std::size_t best = 0;
  for (std::size_t k = 1; k < st.open.size(); ++k) {
    const auto& a = st.open[k];
    const auto& b = st.open[best];
    bool wins;
    if (!a.local_bound || !b.local_bound) {
      wins = !a.local_bound && (b.local_bound || a.id < b.id);
    } else if (*a.local_bound == *b.local_bound) {
      wins = a.id < b.id;
    } else {
      wins = better(st.sense, *a.local_bound, *b.local_bound);
    }
    if (wins) best = k;
  }
  return best;
}

std::pair<BnbNode, BnbNode> expand_node(const BnbNode& node, std::size_t var, double x_b,
                                        BrId first_id) {
  auto child = [&](Dir dir, std::int64_t value, BrId id) {
    BnbNode c;
    c.id = id;
    c.parent = node.id;
    c.branch_var = var;
    c.branch_dir = dir;
    c.branch_value = value;
    c.depth = node.depth + 1;
    c.box = node.box;
    c.chain = node.chain;
    c.chain[var] = value;
    c.local_bound = node.local_bound;
    if (dir == Dir::Floor) {
      c.box[var].hi = c.box[var].hi ? std::min(*c.box[var].hi, value) : value;
    } else {
      c.box[var].lo = std::max(c.box[var].lo, value);
    }
    c.infeasible = c.box[var].empty();
    return c;
  };
  const auto fl = static_cast<std::int64_t>(std::floor(x_b));
  return {child(Dir::Floor, fl, first_id), child(Dir::Ceil, fl + 1, first_id + 1)};
}

std::size_t prune(BnbState& st) {
  if (!st.global_bound) return 0;
  const auto before = st.open.size();
  std::erase_if(st.open, [&](const BnbNode& node) {
    if (!dominated(st.sense, node.local_bound, *st.global_bound)) return false;
    ++st.stats.fathomed;
    if (node.depth < st.stats.fathomed_per_level.size()) ++st.stats.fathomed_per_level[node.depth];
    return true;
  });
  const auto removed = before - st.open.size();
  st.stats.rule_fired[1] += removed;
  st.stats.open = st.open.size();
  return removed;
}

namespace {

class Search {
 public:
  Search(const IlpProblem& p, BnbBackend& backend, const BnbConfig& cfg)
      : p_(p), backend_(backend), cfg_(cfg) {
    st_.sense = p.sense;
    st_.node_cap = cfg.node_cap;
    st_.depth_cap = cfg.depth_cap;
  }

  BnbResult run() {
    BnbResult out;
    BnbNode root;
    root.box.assign(p_.n(), Domain{});
    root.id = st_.next_id++;
    count_created(root);
    const bool keep = evaluate(root);
    out.root_bound = root.local_bound;
    out.root_estimate = root.estimate;
    if (keep) push(std::move(root));
    else fathom(root);

    bool last_level_infeasible = false;
    while (!st_.open.empty()) {
      const std::size_t idx = select_branch_node(st_);
      BnbNode node = std::move(st_.open[idx]);
      st_.open.erase(st_.open.begin() + static_cast<std::ptrdiff_t>(idx));
      st_.stats.open = st_.open.size();
      if (st_.global_bound && dominated(p_.sense, node.local_bound, *st_.global_bound)) {
        ++st_.stats.rule_fired[1];
        fathom(node);
        continue;
      }
      if (node.depth >= cfg_.depth_cap || st_.stats.created + 2 > cfg_.node_cap) {
        st_.stats.cap_hit = true;
        fathom(node);
        continue;
      }
      auto [lo_child, hi_child] = branch(node);
      ++st_.stats.expanded;
      backend_.expand(2);
      last_level_infeasible = false;
      for (BnbNode* c : {&lo_child, &hi_child}) {
        count_created(*c);
        if (evaluate(*c)) {
          push(std::move(*c));
        } else {
          last_level_infeasible |= c->infeasible;
          fathom(*c);
        }
      }
      backend_.prune_batch(st_.open.size());
      const auto open_before = st_.open.size();
      const bool had_bound_ties =
          st_.global_bound && std::any_of(st_.open.begin(), st_.open.end(), [&](const BnbNode& n) {
            return n.local_bound && *n.local_bound == *st_.global_bound;
          });
      prune(st_);
      if (open_before > 0 && st_.open.empty() && st_.incumbent) {
        // End-of-level stop: every remaining leaf matches the incumbent
        // value, or the rest of the level was infeasible.
        if (had_bound_ties) ++st_.stats.rule_fired[2];
        else if (last_level_infeasible) ++st_.stats.rule_fired[3];
      }
    }

    out.stats = st_.stats;
    if (st_.incumbent) {
      out.solution = *st_.incumbent;
      out.solution.status = st_.stats.cap_hit ? Status::NotConverged : Status::Optimal;
    } else {
      out.solution.status = st_.stats.cap_hit ? Status::NotConverged : Status::Infeasible;
    }
    return out;
  }

 private:
  void count_created(const BnbNode& node) {
    ++st_.stats.created;
    auto& per = st_.stats.created_per_level;
    if (per.size() <= node.depth) {
      per.resize(node.depth + 1, 0);
      st_.stats.fathomed_per_level.resize(node.depth + 1, 0);
    }
    ++per[node.depth];
    st_.stats.max_depth = std::max(st_.stats.max_depth, node.depth);
  }

  void fathom(const BnbNode& node) {
    ++st_.stats.fathomed;
    ++st_.stats.fathomed_per_level[node.depth];
  }

  void push(BnbNode node) {
    st_.open.push_back(std::move(node));
    st_.stats.open = st_.open.size();
    st_.stats.peak_open = std::max<std::uint64_t>(st_.stats.peak_open, st_.stats.open);
  }

  void offer(const std::vector<std::int64_t>& point) {
    if (!check_feasibility(p_, std::span<const std::int64_t>(point)).feasible) return;
    const Rational value(evaluate_objective(p_, std::span<const std::int64_t>(point)));
    if (st_.global_bound && !better(p_.sense, value, *st_.global_bound)) return;
    st_.incumbent = make_solution(p_, Status::Optimal, std::span<const std::int64_t>(point));
    st_.global_bound = value;
    ++st_.stats.incumbent_updates;
  }

  std::vector<std::int64_t> clamp_point(const BnbNode& node, std::span<const double> x,
                                        bool round_up) const {
    std::vector<std::int64_t> pt(p_.n());
    for (std::size_t j = 0; j < p_.n(); ++j) {
      const double r = round_up ? std::ceil(x[j] - 1e-9) : std::floor(x[j] + 1e-9);
      auto v = static_cast<std::int64_t>(std::clamp(r, -1e15, 1e15));
      v = std::max(v, node.box[j].lo);
      if (node.box[j].hi) v = std::min(v, *node.box[j].hi);
      pt[j] = v;
    }
    return pt;
  }

  /// Bounds, relaxes and mines incumbents for a fresh node. Returns false
  /// when the node is fathomed.
  bool evaluate(BnbNode& node) {
    if (node.infeasible || !propagate(p_, node.box)) {
      node.infeasible = true;
      ++st_.stats.infeasible_nodes;
      return false;
    }
    node.local_bound = tighter(p_.sense, node.local_bound, box_bound(p_, node.box));
    if (st_.global_bound && dominated(p_.sense, node.local_bound, *st_.global_bound)) {
      ++st_.stats.rule_fired[1];
      return false;
    }
    const bool point = std::all_of(node.box.begin(), node.box.end(),
                                   [](const Domain& d) { return d.pinned(); });
    if (point) {
      std::vector<std::int64_t> pt;
      for (const auto& d : node.box) pt.push_back(d.lo);
      backend_.verify(p_.m(), p_.n());
      offer(pt);
      ++st_.stats.rule_fired[0];
      return false;
    }
    relax(node);
    if (node.relax_status == Status::NotConverged) return true;

    const double tol = backend_.int_tolerance();
    const bool integral = std::all_of(node.relaxed_x.begin(), node.relaxed_x.end(), [&](double v) {
      return std::abs(v - std::round(v)) <= tol;
    });
    if (integral) {
      std::vector<std::int64_t> pt;
      for (double v : node.relaxed_x) pt.push_back(static_cast<std::int64_t>(std::llround(v)));
      const bool inside = std::equal(pt.begin(), pt.end(), node.box.begin(), [](auto v, const Domain& d) {
        return v >= d.lo && (!d.hi || v <= *d.hi);
      });
      offer(pt);
      if (inside && check_feasibility(p_, std::span<const std::int64_t>(pt)).feasible &&
          node.local_bound &&
          Rational(evaluate_objective(p_, std::span<const std::int64_t>(pt))) == *node.local_bound) {
        ++st_.stats.rule_fired[0];
        return false;
      }
    }
    offer(clamp_point(node, node.relaxed_x, p_.sense == Sense::Min));
    if (st_.global_bound && dominated(p_.sense, node.local_bound, *st_.global_bound)) {
      ++st_.stats.rule_fired[1];
      return false;
    }
    return true;
  }

  void relax(BnbNode& node) {
    std::map<std::size_t, std::int64_t> fixed;
    for (std::size_t j = 0; j < p_.n(); ++j) {
      if (node.box[j].pinned()) fixed[j] = node.box[j].lo;
    }
    for (const auto& [var, value] : node.chain) {
      std::int64_t v = std::max(value, node.box[var].lo);
      if (node.box[var].hi) v = std::min(v, *node.box[var].hi);
      fixed[var] = v;
    }
    sle::SquareSystem sys;
    for (;;) {
      try {
        sys = sle::select_square_system(p_, fixed);
        break;
      } catch (const sle::NoDiagonalError& e) {
        for (auto v : e.vars()) fixed[v] = node.box[v].lo;
      }
    }
    ++st_.stats.relaxations;
    sle::SleResult res;
    if (sys.size() == 0) {
      res.status = Status::Optimal;
    } else {
      res = backend_.relax(p_, sys);
    }
    st_.stats.jacobi_iterations += res.iterations;
    if (res.status != Status::Optimal) {
      node.relax_status = Status::NotConverged;
      ++st_.stats.relax_not_converged;
      return;
    }
    node.relaxed_x = sle::expand(sys, p_.n(), res.x);
    const double f = max_form(p_, node.relaxed_x);
    const double raw = p_.sense == Sense::Max ? f : -f;
    node.estimate = Rational(static_cast<std::int64_t>(
        p_.sense == Sense::Max ? std::floor(raw + 1e-9) : std::ceil(raw - 1e-9)));
    // Near-memory verification: all original rows plus the branch bounds.
    backend_.verify(p_.m() + node.chain.size(), p_.n());
    const double tol = backend_.int_tolerance();
    bool ok = true;
    for (const auto& row : p_.constraints) {
      double lhs = 0;
      double scale = 1;
      for (std::size_t j = 0; j < p_.n(); ++j) {
        lhs += static_cast<double>(row.coeffs[j]) * node.relaxed_x[j];
        scale += std::abs(static_cast<double>(row.coeffs[j]));
      }
      if (lhs > static_cast<double>(row.rhs) + tol * scale) {
        ok = false;
        break;
      }
    }
    for (std::size_t j = 0; ok && j < p_.n(); ++j) {
      const double v = node.relaxed_x[j];
      if (v < static_cast<double>(node.box[j].lo) - tol) ok = false;
      if (node.box[j].hi && v > static_cast<double>(*node.box[j].hi) + tol) ok = false;
    }
    node.relax_status = ok ? Status::Optimal : Status::Infeasible;
    if (!ok) ++st_.stats.relax_unverified;
  }

  std::pair<BnbNode, BnbNode> branch(const BnbNode& node) {
    const BrId first = st_.next_id;
    st_.next_id += 2;
    if (node.relax_status != Status::NotConverged) {
      // Fractional components strictly inside their domain.
      std::vector<double> masked(node.relaxed_x);
      bool any = false;
      for (std::size_t j = 0; j < p_.n(); ++j) {
        const double v = masked[j];
        const auto& d = node.box[j];
        const bool inside = v > static_cast<double>(d.lo) && (!d.hi || v < static_cast<double>(*d.hi));
        const double f = frac_part(v);
        if (!inside || f <= cfg_.int_tol || f >= 1.0 - cfg_.int_tol) masked[j] = std::floor(v);
        else any = true;
      }
      if (any) {
        const std::size_t var = select_branch_variable(masked, cfg_.rule, cfg_.int_tol);
        return expand_node(node, var, masked[var], first);
      }
    }
    // Split the widest domain at its midpoint.
    std::optional<std::size_t> widest;
    std::int64_t width = 0;
    std::optional<std::size_t> unbounded;
    for (std::size_t j = 0; j < p_.n(); ++j) {
      const auto& d = node.box[j];
      if (!d.hi) {
        if (!unbounded) unbounded = j;
        continue;
      }
      if (*d.hi - d.lo > width) {
        width = *d.hi - d.lo;
        widest = j;
      }
    }
    if (widest) {
      const auto& d = node.box[*widest];
      const std::int64_t mid = d.lo + (*d.hi - d.lo - 1) / 2;
      return expand_node(node, *widest, static_cast<double>(mid) + 0.5, first);
    }
    const std::int64_t lo = node.box[*unbounded].lo;
    return expand_node(node, *unbounded, static_cast<double>(2 * lo + 1) + 0.5, first);
  }

  const IlpProblem& p_;
  BnbBackend& backend_;
  BnbConfig cfg_;
  BnbState st_;
};

}  // namespace

BnbResult solve_ilp(const IlpProblem& problem, BnbBackend& backend, const BnbConfig& config) {
  if (!problem.integral) throw BnbError("branch and bound needs an integral problem");
  return Search(problem, backend, config).run();
}

}  // namespace spark::bnb
