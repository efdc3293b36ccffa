#include "shiftpd/formula.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "shiftpd/errors.hpp"

namespace shiftpd {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

Formula::Formula(std::uint32_t nvars, std::vector<Gate> gates, std::size_t root)
    : nvars_(nvars), gates_(std::move(gates)), root_(root) {
  if (root_ >= gates_.size()) throw DomainError("formula root is not a gate");
  std::vector<std::size_t> parent(gates_.size(), kNone);
  for (std::size_t id = 0; id < gates_.size(); ++id) {
    const Gate& g = gates_[id];
    if (g.op == GateOp::Input) {
      if (!g.children.empty()) throw DomainError("input gate " + std::to_string(id) + " has children");
      if (g.var == 0 || g.var > nvars_)
        throw DomainError("input gate " + std::to_string(id) + " reads x" + std::to_string(g.var) + " outside x1..x" +
                          std::to_string(nvars_));
      continue;
    }
    if (g.children.empty()) throw DomainError("gate " + std::to_string(id) + " has no children");
    for (const auto& e : g.children) {
      if (e.child >= gates_.size()) throw DomainError("gate " + std::to_string(id) + " has a dangling child");
      if (e.coeff.is_zero()) throw DomainError("gate " + std::to_string(id) + " has a zero edge scalar");
      if (e.coeff.field().is_prime()) throw DomainError("formula scalars must be rational");
      if (parent[e.child] != kNone) throw DomainError("gate " + std::to_string(e.child) + " has two parents");
      parent[e.child] = id;
    }
  }
  if (parent[root_] != kNone) throw DomainError("formula root has a parent");
  // Every gate must reach the root; a walk longer than the gate count means a cycle.
  for (std::size_t id = 0; id < gates_.size(); ++id) {
    std::size_t cur = id;
    std::size_t steps = 0;
    while (cur != root_) {
      cur = parent[cur];
      if (cur == kNone) throw DomainError("gate " + std::to_string(id) + " is not reachable from the root");
      if (++steps > gates_.size()) throw DomainError("formula graph has a cycle");
    }
  }
}

std::vector<std::size_t> Formula::postorder() const {
  std::vector<std::size_t> order;
  order.reserve(gates_.size());
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const auto& ch = gates_[id].children;
    if (next < ch.size()) {
      std::size_t c = ch[next++].child;
      stack.emplace_back(c, 0);
    } else {
      order.push_back(id);
      stack.pop_back();
    }
  }
  return order;
}

std::size_t FormulaBuilder::input(std::uint32_t var) {
  Gate g;
  g.op = GateOp::Input;
  g.var = var;
  gates_.push_back(std::move(g));
  return gates_.size() - 1;
}

std::size_t FormulaBuilder::add(std::vector<std::pair<std::size_t, Scalar>> children) {
  Gate g;
  g.op = GateOp::Add;
  for (auto& [c, s] : children) g.children.push_back({c, s});
  gates_.push_back(std::move(g));
  return gates_.size() - 1;
}

std::size_t FormulaBuilder::add(const std::vector<std::size_t>& children) {
  std::vector<std::pair<std::size_t, Scalar>> v;
  for (auto c : children) v.emplace_back(c, Scalar(1));
  return add(std::move(v));
}

std::size_t FormulaBuilder::mul(std::vector<std::pair<std::size_t, Scalar>> children) {
  Gate g;
  g.op = GateOp::Mul;
  for (auto& [c, s] : children) g.children.push_back({c, s});
  gates_.push_back(std::move(g));
  return gates_.size() - 1;
}

std::size_t FormulaBuilder::mul(const std::vector<std::size_t>& children) {
  std::vector<std::pair<std::size_t, Scalar>> v;
  for (auto c : children) v.emplace_back(c, Scalar(1));
  return mul(std::move(v));
}

Formula FormulaBuilder::build(std::size_t root) const {
  if (root >= gates_.size()) throw DomainError("builder root is not a gate");
  std::vector<Gate> out;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
  std::vector<std::size_t> new_id(gates_.size(), kNone);
  std::vector<std::size_t> visits(gates_.size(), 0);
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const auto& ch = gates_[id].children;
    if (next < ch.size()) {
      std::size_t c = ch[next++].child;
      if (c >= gates_.size()) throw DomainError("builder gate has a dangling child");
      if (++visits[c] > 1) throw DomainError("builder gate " + std::to_string(c) + " is used twice");
      stack.emplace_back(c, 0);
    } else {
      Gate g = gates_[id];
      for (auto& e : g.children) e.child = new_id[e.child];
      new_id[id] = out.size();
      out.push_back(std::move(g));
      stack.pop_back();
    }
  }
  return Formula(nvars_, std::move(out), new_id[root]);
}

namespace {

std::vector<Polynomial> eval_gates_with(const Formula& f, std::uint32_t nvars, std::optional<std::size_t> y_gate) {
  std::vector<Polynomial> val(f.size(), Polynomial(nvars));
  for (std::size_t id : f.postorder()) {
    if (y_gate && id == *y_gate) {
      val[id] = Polynomial::variable(nvars, nvars);
      continue;
    }
    const Gate& g = f.gate(id);
    switch (g.op) {
      case GateOp::Input:
        val[id] = Polynomial::variable(g.var, nvars);
        break;
      case GateOp::Add: {
        Polynomial s(nvars);
        for (const auto& e : g.children) s += val[e.child].scaled(e.coeff);
        val[id] = std::move(s);
        break;
      }
      case GateOp::Mul: {
        Polynomial p = Polynomial::constant(Scalar(1), nvars);
        for (const auto& e : g.children) p = p * val[e.child].scaled(e.coeff);
        val[id] = std::move(p);
        break;
      }
    }
  }
  return val;
}

}  // namespace

std::vector<Polynomial> eval_gates(const Formula& f) { return eval_gates_with(f, f.nvars(), std::nullopt); }

Polynomial eval_formula(const Formula& f) { return eval_gates(f)[f.root()]; }

bool check_homogeneous(const Formula& f) {
  for (const auto& p : eval_gates(f)) {
    if (!is_homogeneous(p).homogeneous) return false;
  }
  return true;
}

std::vector<std::optional<std::uint32_t>> formal_degrees(const Formula& f) {
  std::vector<std::optional<std::uint32_t>> deg(f.size());
  for (std::size_t id : f.postorder()) {
    const Gate& g = f.gate(id);
    if (g.op == GateOp::Input) {
      deg[id] = 1;
    } else if (g.op == GateOp::Mul) {
      std::uint32_t s = 0;
      bool ok = true;
      for (const auto& e : g.children) {
        if (!deg[e.child]) ok = false;
        else s += *deg[e.child];
      }
      if (ok) deg[id] = s;
    } else {
      std::optional<std::uint32_t> common = deg[g.children.front().child];
      for (const auto& e : g.children) {
        if (deg[e.child] != common) common.reset();
      }
      deg[id] = common;
    }
  }
  return deg;
}

bool is_syntactically_homogeneous(const Formula& f) { return formal_degrees(f)[f.root()].has_value(); }

std::uint32_t product_depth(const Formula& f) {
  std::vector<std::uint32_t> depth(f.size(), 0);
  for (std::size_t id : f.postorder()) {
    const Gate& g = f.gate(id);
    std::uint32_t m = 0;
    for (const auto& e : g.children) m = std::max(m, depth[e.child]);
    depth[id] = m + (g.op == GateOp::Mul ? 1 : 0);
  }
  return depth[f.root()];
}

namespace {

class Rewriter {
 public:
  Rewriter(const Formula& f, const RewriteOptions& opts) : f_(f), opts_(opts) {
    if (opts_.prune_degrees) semantic_ = eval_gates(f);
  }

  std::optional<Formula> run() {
    // Iterative post-order so deep formulas do not exhaust the stack.
    std::vector<Result> res(f_.size());
    for (std::size_t id : f_.postorder()) res[id] = visit(id, res);
    Result r = res[f_.root()];
    if (!r.id) return std::nullopt;
    std::size_t root = *r.id;
    if (!r.mult.is_one()) {
      Gate g;
      g.op = GateOp::Add;
      g.children.push_back({root, r.mult});
      root = push(std::move(g), deg_[root]);
    }
    return compact(root);
  }

 private:
  struct Result {
    std::optional<std::size_t> id;  // nullopt: the zero polynomial
    Scalar mult{1};                 // value = mult * value(new gate id)
  };

  Result visit(std::size_t id, const std::vector<Result>& res) {
    const Gate& g = f_.gate(id);
    if (opts_.zero_gate && *opts_.zero_gate == id) return {};
    if (g.op == GateOp::Input) {
      Gate n;
      n.op = GateOp::Input;
      n.var = g.var;
      return {push(std::move(n), 1), Scalar(1)};
    }
    if (g.op == GateOp::Mul) {
      Scalar mult(1);
      std::vector<std::size_t> kids;
      for (const auto& e : g.children) {
        const Result& c = res[e.child];
        if (!c.id) return {};
        mult *= e.coeff * c.mult;
        if (opts_.flatten && out_[*c.id].op == GateOp::Mul) {
          for (const auto& ce : out_[*c.id].children) kids.push_back(ce.child);
        } else {
          kids.push_back(*c.id);
        }
      }
      if (kids.size() == 1 && opts_.collapse_unary) return {kids.front(), mult};
      std::size_t acc;
      if (opts_.binarize && kids.size() > 2) {
        acc = make_mul({kids[0], kids[1]});
        for (std::size_t i = 2; i < kids.size(); ++i) acc = make_mul({acc, kids[i]});
      } else {
        acc = make_mul(kids);
      }
      return {acc, mult};
    }
    // Add gate.
    std::optional<std::uint32_t> keep_degree;
    if (opts_.prune_degrees) {
      auto h = is_homogeneous(semantic_[id]);
      if (!h.degree) {
        if (!h.homogeneous) throw PreconditionError("gate " + std::to_string(id) + " computes an inhomogeneous polynomial");
        return {};  // the gate computes 0
      }
      keep_degree = h.degree;
    }
    std::vector<Edge> edges;
    for (const auto& e : g.children) {
      const Result& c = res[e.child];
      if (!c.id) continue;
      if (keep_degree && deg_[*c.id] != keep_degree) continue;
      Scalar coeff = e.coeff * c.mult;
      if (opts_.flatten && out_[*c.id].op == GateOp::Add) {
        for (const auto& ce : out_[*c.id].children) edges.push_back({ce.child, coeff * ce.coeff});
      } else {
        edges.push_back({*c.id, coeff});
      }
    }
    if (edges.empty()) return {};
    if (edges.size() == 1 && opts_.collapse_unary) return {edges.front().child, edges.front().coeff};
    std::optional<std::uint32_t> d = deg_[edges.front().child];
    for (const auto& e : edges) {
      if (deg_[e.child] != d) d.reset();
    }
    Gate n;
    n.op = GateOp::Add;
    n.children = std::move(edges);
    return {push(std::move(n), d), Scalar(1)};
  }

  std::size_t make_mul(const std::vector<std::size_t>& kids) {
    Gate n;
    n.op = GateOp::Mul;
    std::optional<std::uint32_t> d = 0;
    for (auto k : kids) {
      n.children.push_back({k, Scalar(1)});
      if (d && deg_[k]) *d += *deg_[k];
      else d.reset();
    }
    return push(std::move(n), d);
  }

  std::size_t push(Gate g, std::optional<std::uint32_t> d) {
    out_.push_back(std::move(g));
    deg_.push_back(d);
    return out_.size() - 1;
  }

  // Drops gates orphaned by flattening and renumbers in post-order.
  Formula compact(std::size_t root) {
    std::vector<std::size_t> new_id(out_.size(), kNone);
    std::vector<Gate> gates;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      if (next < out_[id].children.size()) {
        std::size_t c = out_[id].children[next++].child;
        stack.emplace_back(c, 0);
      } else {
        Gate g = out_[id];
        for (auto& e : g.children) e.child = new_id[e.child];
        new_id[id] = gates.size();
        gates.push_back(std::move(g));
        stack.pop_back();
      }
    }
    return Formula(f_.nvars(), std::move(gates), new_id[root]);
  }

  const Formula& f_;
  RewriteOptions opts_;
  std::vector<Polynomial> semantic_;
  std::vector<Gate> out_;
  std::vector<std::optional<std::uint32_t>> deg_;
};

}  // namespace

std::optional<Formula> rewrite_formula(const Formula& f, const RewriteOptions& opts) {
  return Rewriter(f, opts).run();
}

Formula binarize(const Formula& f) {
  RewriteOptions o;
  o.binarize = true;
  auto r = rewrite_formula(f, o);
  if (!r) throw DomainError("binarize: formula simplifies to zero");
  return *r;
}

Formula subformula(const Formula& f, std::size_t g) {
  if (g >= f.size()) throw DomainError("gate " + std::to_string(g) + " not found");
  std::vector<std::size_t> new_id(f.size(), kNone);
  std::vector<Gate> gates;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{g, 0}};
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const auto& ch = f.gate(id).children;
    if (next < ch.size()) {
      std::size_t c = ch[next++].child;
      stack.emplace_back(c, 0);
    } else {
      Gate n = f.gate(id);
      for (auto& e : n.children) e.child = new_id[e.child];
      new_id[id] = gates.size();
      gates.push_back(std::move(n));
      stack.pop_back();
    }
  }
  return Formula(f.nvars(), std::move(gates), new_id[g]);
}

GateSplit split_at_gate(const Formula& f, std::size_t g) {
  if (g >= f.size()) throw DomainError("gate " + std::to_string(g) + " not found");
  const std::uint32_t n = f.nvars();
  Polynomial with_y = eval_gates_with(f, n + 1, g)[f.root()];
  Polynomial A(n);
  Polynomial B(n);
  const std::uint32_t y = n + 1;
  for (const auto& [m, c] : with_y.terms()) {
    std::uint32_t e = m.exponent(y);
    if (e == 0) {
      B.add_term(m, c);
    } else if (e == 1) {
      A.add_term(m.quotient(Monomial::variable(y)), c);
    } else {
      throw DomainError("split_at_gate: gate appears more than once");
    }
  }
  return {std::move(A), std::move(B), subformula(f, g)};
}

}  // namespace shiftpd
