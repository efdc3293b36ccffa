#include "shiftpd/upt.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "shiftpd/errors.hpp"

namespace shiftpd {

namespace {

void require_parse_tree_shape(const Formula& f) {
  if (!is_syntactically_homogeneous(f))
    throw PreconditionError("parse trees need a formula whose Add gates have children of equal degree");
  for (const auto& g : f.gates()) {
    if (g.op == GateOp::Mul && g.children.size() != 2)
      throw PreconditionError("parse trees need Mul gates of fan-in exactly 2 (binarize first)");
  }
}

}  // namespace

mpz_class count_parse_trees(const Formula& f) {
  require_parse_tree_shape(f);
  std::vector<mpz_class> cnt(f.size());
  for (std::size_t id : f.postorder()) {
    const Gate& g = f.gate(id);
    if (g.op == GateOp::Input) {
      cnt[id] = 1;
    } else if (g.op == GateOp::Mul) {
      cnt[id] = cnt[g.children[0].child] * cnt[g.children[1].child];
    } else {
      cnt[id] = 0;
      for (const auto& e : g.children) cnt[id] += cnt[e.child];
    }
  }
  return cnt[f.root()];
}

ParseTreeSet parse_trees(const Formula& f, std::size_t limit) {
  ParseTreeSet out;
  out.total = count_parse_trees(f);
  std::vector<std::vector<BinaryTree>> trees(f.size());
  for (std::size_t id : f.postorder()) {
    const Gate& g = f.gate(id);
    auto& mine = trees[id];
    if (g.op == GateOp::Input) {
      mine.push_back(BinaryTree::leaf());
    } else if (g.op == GateOp::Mul) {
      for (const auto& l : trees[g.children[0].child]) {
        for (const auto& r : trees[g.children[1].child]) {
          if (mine.size() >= limit) break;
          mine.push_back(BinaryTree::join(l, r));
        }
      }
    } else {
      for (const auto& e : g.children) {
        for (const auto& t : trees[e.child]) {
          if (mine.size() >= limit) break;
          mine.push_back(t);
        }
      }
    }
    for (const auto& e : g.children) {
      trees[e.child].clear();
      trees[e.child].shrink_to_fit();
    }
  }
  out.trees = std::move(trees[f.root()]);
  out.truncated = out.total > mpz_class(static_cast<unsigned long>(out.trees.size()));
  return out;
}

UptResult is_upt(const Formula& f) {
  require_parse_tree_shape(f);
  std::vector<std::optional<std::pair<BinaryTree, std::string>>> canon(f.size());
  UptResult out;
  for (std::size_t id : f.postorder()) {
    const Gate& g = f.gate(id);
    if (g.op == GateOp::Input) {
      canon[id] = std::make_pair(BinaryTree::leaf(), std::string("L"));
    } else if (g.op == GateOp::Mul) {
      auto l = *canon[g.children[0].child];
      auto r = *canon[g.children[1].child];
      if (canonical_swap(l.first.leaves(), l.second, r.first.leaves(), r.second)) std::swap(l, r);
      std::string enc = "(" + l.second + "," + r.second + ")";
      canon[id] = std::make_pair(BinaryTree::join(l.first, r.first), std::move(enc));
    } else {
      const auto& first = *canon[g.children.front().child];
      for (const auto& e : g.children) {
        if (canon[e.child]->second != first.second) return out;
      }
      canon[id] = first;
    }
  }
  out.upt = true;
  out.tree = canon[f.root()]->first;
  return out;
}

DegreeSequence make_degree_sequence(std::vector<std::uint32_t> degrees) {
  DegreeSequence ds;
  std::uint32_t d = 0;
  for (auto di : degrees) {
    if (di == 0) throw DomainError("degree sequence entries must be positive");
    d += di;
  }
  ds.suffixes.push_back(d);
  for (auto di : degrees) ds.suffixes.push_back(ds.suffixes.back() - di);
  ds.degrees = std::move(degrees);
  return ds;
}

std::size_t deg_seq_split_depth(const BinaryTree& t) {
  if (!t.is_right_heavy()) throw PreconditionError("deg_seq needs a right-heavy (canonical) tree");
  if (t.is_leaf()) return 0;
  const std::size_t d = t.leaves();
  std::size_t j = 0;
  std::size_t best = 0;
  BinaryTree v = t;
  while (true) {
    if (3 * v.leaves() > d) best = j;
    if (v.is_leaf()) break;
    v = v.right();
    ++j;
  }
  return best;
}

DegreeSequence deg_seq(const BinaryTree& t) {
  if (!t.is_right_heavy()) throw PreconditionError("deg_seq needs a right-heavy (canonical) tree");
  std::vector<std::uint32_t> degrees;
  BinaryTree cur = t;
  while (!cur.is_leaf()) {
    std::size_t j = deg_seq_split_depth(cur);
    BinaryTree v = cur;
    for (std::size_t s = 0; s < j; ++s) v = v.right();
    degrees.push_back(static_cast<std::uint32_t>(cur.leaves() - v.leaves()));
    cur = v;
  }
  degrees.push_back(1);
  return make_degree_sequence(std::move(degrees));
}

UptKTrace upt_k(const DegreeSequence& ds) {
  UptKTrace tr;
  if (ds.degrees.empty()) throw DomainError("upt_k needs a non-empty degree sequence");
  const std::uint32_t d = ds.total();
  tr.d = d;
  // m = floor((log3 d - 1)/3) is the largest m with 3^(3m+1) <= d; clamped at 0.
  mpz_class p3 = 3;
  while (true) {
    mpz_class next = p3 * 27;
    if (next > d) break;
    p3 = next;
    ++tr.m;
  }
  if (3 > d) tr.m = 0;
  const std::size_t t = ds.degrees.size();
  mpz_class pow3 = 1;
  for (std::uint32_t i = 1; i <= 3 * tr.m; ++i) {
    pow3 *= 3;
    std::size_t j = 0;
    while (j <= t && mpz_class(ds.suffixes[j]) > pow3) ++j;
    tr.J.push_back(j);
  }
  mpq_class partial = 0;
  mpz_class pow27 = 1;
  for (std::uint32_t i = 1; i <= tr.m; ++i) {
    pow27 *= 27;
    const std::size_t j = tr.J[3 * i - 1];
    if (j + 1 > t) throw DomainError("upt_k: degree sequence too short for J(3i)");
    const mpz_class dj1 = ds.degrees[j];  // d_{j+1}
    mpq_class b0 = partial * dj1;
    mpq_class b1 = (partial + mpq_class(1, pow27)) * dj1;
    b1.canonicalize();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), b0.get_num_mpz_t(), b0.get_den_mpz_t());
    mpq_class frac = b0 - fl;
    int a = (frac >= mpq_class(1, 18) && frac <= mpq_class(17, 18)) ? 0 : 1;
    tr.a.push_back(a);
    tr.b0.push_back(b0);
    tr.b1.push_back(b1);
    if (a) {
      partial += mpq_class(1, pow27);
      partial.canonicalize();
    }
  }
  tr.alpha = partial;
  mpq_class ad = partial * d;
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), ad.get_num_mpz_t(), ad.get_den_mpz_t());
  tr.k = k.get_ui();
  return tr;
}

std::size_t LabeledTree::leaves() const {
  if (kids.empty()) return 1;
  return kids[0].leaves() + kids[1].leaves();
}

LabeledTree first_parse_tree(const Formula& f) {
  require_parse_tree_shape(f);
  std::vector<std::optional<LabeledTree>> memo(f.size());
  for (std::size_t id : f.postorder()) {
    const Gate& g = f.gate(id);
    if (g.op == GateOp::Input) {
      memo[id] = LabeledTree{id, {}};
    } else if (g.op == GateOp::Mul) {
      LabeledTree t{id, {}};
      t.kids.push_back(std::move(*memo[g.children[0].child]));
      t.kids.push_back(std::move(*memo[g.children[1].child]));
      memo[id] = std::move(t);
    } else {
      memo[id] = std::move(*memo[g.children.front().child]);
    }
  }
  return std::move(*memo[f.root()]);
}

namespace {

std::pair<LabeledTree, std::string> canon_labeled(const LabeledTree& t, std::size_t& leaves) {
  if (t.kids.empty()) {
    leaves = 1;
    return {t, "L"};
  }
  std::size_t ll = 0;
  std::size_t rl = 0;
  auto l = canon_labeled(t.kids[0], ll);
  auto r = canon_labeled(t.kids[1], rl);
  if (canonical_swap(ll, l.second, rl, r.second)) {
    std::swap(l, r);
    std::swap(ll, rl);
  }
  leaves = ll + rl;
  LabeledTree out{t.gate, {}};
  std::string enc = "(" + l.second + "," + r.second + ")";
  out.kids.push_back(std::move(l.first));
  out.kids.push_back(std::move(r.first));
  return {std::move(out), std::move(enc)};
}

}  // namespace

LabeledTree canonical_labeled(const LabeledTree& t) {
  std::size_t leaves = 0;
  return canon_labeled(t, leaves).first;
}

BinaryTree unlabel(const LabeledTree& t) {
  if (t.kids.empty()) return BinaryTree::leaf();
  return BinaryTree::join(unlabel(t.kids[0]), unlabel(t.kids[1]));
}

}  // namespace shiftpd
