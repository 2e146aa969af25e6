#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "splogic/formula.hpp"

namespace splogic {

/// Syntactic metrics locating a formula relative to the decidability
/// frontier: how deeply first-order and counting quantifiers nest, how many
/// distinct variable names occur, whether second-order quantification is
/// monadic, and how deep the operands of spatial operators are.
struct FragmentReport {
  int fo_depth = 0;        // nesting of first-order + counting quantifiers
  int counting_depth = 0;  // nesting of counting quantifiers alone
  int fo_var_count = 0;    // distinct first-order variable names
  bool is_monadic_so = true;
  int spatial_operand_max_fo_depth = 0;  // 0 when no spatial operator occurs
  bool uses_only_unary_split = true;
};

namespace detail {

struct QuantDepths {
  int fo = 0;
  int counting = 0;
};

/// Quantifier depths with sugar counted exactly as its expansion: a
/// universal quantifier is one level, an exact-count quantifier is one
/// counting level. Second-order binders add nothing; fixpoint parameter
/// lists count one level per bound variable.
inline QuantDepths quant_depths(const Formula& f) {
  QuantDepths d;
  for (const auto& k : f.kids()) {
    QuantDepths c = quant_depths(k);
    d.fo = std::max(d.fo, c.fo);
    d.counting = std::max(d.counting, c.counting);
  }
  switch (f.kind()) {
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      d.fo += 1;
      break;
    case FormulaKind::CountExists:
    case FormulaKind::ExistsExactly:
      d.fo += 1;
      d.counting += 1;
      break;
    case FormulaKind::LfpAtom: {
      QuantDepths body = quant_depths(f.child(0));
      d.fo = std::max(d.fo, body.fo + static_cast<int>(f.params().size()));
      break;
    }
    case FormulaKind::LetRec: {
      QuantDepths body = quant_depths(f.child(0));
      QuantDepths scope = quant_depths(f.child(1));
      d.fo = std::max(body.fo + static_cast<int>(f.params().size()), scope.fo);
      d.counting = std::max(body.counting, scope.counting);
      break;
    }
    default:
      break;
  }
  return d;
}

inline void classify_walk(const Formula& f, const std::map<std::string, int>& arities,
                          FragmentReport& report) {
  switch (f.kind()) {
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      if (f.so_arity() != 1) report.is_monadic_so = false;
      break;
    case FormulaKind::LfpAtom:
    case FormulaKind::LetRec:
      if (f.params().size() != 1) report.is_monadic_so = false;
      break;
    case FormulaKind::SpatialAnd: {
      for (const auto& k : f.kids())
        report.spatial_operand_max_fo_depth =
            std::max(report.spatial_operand_max_fo_depth, quant_depths(k).fo);
      if (!f.sigma()) {
        report.uses_only_unary_split = false;
      } else {
        for (const auto& p : *f.sigma()) {
          auto it = arities.find(p);
          if (it == arities.end() || it->second != 1) report.uses_only_unary_split = false;
        }
      }
      break;
    }
    case FormulaKind::SpatialImpl:
      for (const auto& k : f.kids())
        report.spatial_operand_max_fo_depth =
            std::max(report.spatial_operand_max_fo_depth, quant_depths(k).fo);
      report.uses_only_unary_split = false;
      break;
    default:
      break;
  }
  for (const auto& k : f.kids()) classify_walk(k, arities, report);
}

}  // namespace detail

inline FragmentReport classify(const Formula& f) {
  FragmentReport report;
  detail::QuantDepths d = detail::quant_depths(f);
  report.fo_depth = d.fo;
  report.counting_depth = d.counting;
  report.fo_var_count = static_cast<int>(all_fo_names(f).size());
  detail::classify_walk(f, so_arity_hints(f), report);
  return report;
}

inline std::string format_report(const FragmentReport& r) {
  std::string out;
  out += "fo_depth: " + std::to_string(r.fo_depth) + "\n";
  out += "counting_depth: " + std::to_string(r.counting_depth) + "\n";
  out += "fo_var_count: " + std::to_string(r.fo_var_count) + "\n";
  out += std::string("monadic_so: ") + (r.is_monadic_so ? "true" : "false") + "\n";
  out += "spatial_operand_max_fo_depth: " +
         std::to_string(r.spatial_operand_max_fo_depth) + "\n";
  out += std::string("unary_split_only: ") + (r.uses_only_unary_split ? "true" : "false") +
         "\n";
  return out;
}

/// Decidability-frontier fragments the classifier can test membership in.
enum class Fragment {
  /// Two-variable counting logic whose spatial operands have quantifier
  /// depth at most one; spatial conjunction is harmless here.
  SpatialOverShallowC2,
  /// Monadic second-order quantification over two-variable matrices of
  /// quantifier depth at most one; eliminating the quantifiers lands in
  /// SpatialOverShallowC2.
  MonadicSoOverShallowC2,
  /// At most two distinct first-order variable names.
  TwoVariable,
  /// Monadic second-order quantification and unary-only splits.
  MonadicSecondOrder,
};

struct FragmentViolation {
  std::string path;  // dotted child indices from the root; empty = the root
  std::string reason;
};

struct FragmentCheck {
  bool ok = true;
  std::vector<FragmentViolation> violations;
};

namespace detail {

inline std::string child_path(const std::string& prefix, std::size_t i) {
  return prefix.empty() ? std::to_string(i) : prefix + "." + std::to_string(i);
}

inline void fragment_walk(const Formula& f, Fragment which,
                          const std::map<std::string, int>& arities,
                          const std::string& path, FragmentCheck& check) {
  switch (which) {
    case Fragment::SpatialOverShallowC2:
      if (f.kind() == FormulaKind::SpatialAnd || f.kind() == FormulaKind::SpatialImpl) {
        for (std::size_t i = 0; i < f.num_children(); ++i) {
          int depth = quant_depths(f.child(i)).fo;
          if (depth > 1)
            check.violations.push_back(
                {child_path(path, i), "spatial operand has quantifier depth " +
                                          std::to_string(depth) + " (allowed: 1)"});
        }
      }
      break;
    case Fragment::MonadicSoOverShallowC2:
      if (f.kind() == FormulaKind::ExistsSO || f.kind() == FormulaKind::ForallSO) {
        if (f.so_arity() != 1)
          check.violations.push_back(
              {path, "second-order binder " + f.pred() + " has arity " +
                         std::to_string(f.so_arity()) + " (allowed: 1)"});
        int depth = quant_depths(f.child(0)).fo;
        if (depth > 1)
          check.violations.push_back(
              {child_path(path, 0), "quantified matrix has quantifier depth " +
                                        std::to_string(depth) + " (allowed: 1)"});
      }
      if (f.kind() == FormulaKind::LfpAtom || f.kind() == FormulaKind::LetRec)
        check.violations.push_back({path, "fixpoint operator outside the fragment"});
      break;
    case Fragment::TwoVariable:
      break;
    case Fragment::MonadicSecondOrder:
      if (is_so_binder(f.kind()) && so_binder_arity(f) != 1)
        check.violations.push_back(
            {path, "second-order binder " + f.pred() + " has arity " +
                       std::to_string(so_binder_arity(f)) + " (allowed: 1)"});
      if (f.kind() == FormulaKind::SpatialAnd) {
        if (!f.sigma()) {
          check.violations.push_back({path, "split over the full signature"});
        } else {
          for (const auto& p : *f.sigma()) {
            auto it = arities.find(p);
            if (it == arities.end() || it->second != 1)
              check.violations.push_back({path, "split set member " + p + " is not unary"});
          }
        }
      }
      if (f.kind() == FormulaKind::SpatialImpl)
        check.violations.push_back({path, "spatial implication extends the full signature"});
      break;
  }
  for (std::size_t i = 0; i < f.num_children(); ++i)
    fragment_walk(f.child(i), which, arities, child_path(path, i), check);
}

}  // namespace detail

/// Membership test with one violation per offending subformula; paths are
/// dotted child indices from the root.
inline FragmentCheck in_fragment(const Formula& f, Fragment which) {
  FragmentCheck check;
  std::map<std::string, int> arities = so_arity_hints(f);
  if (which == Fragment::SpatialOverShallowC2 || which == Fragment::MonadicSoOverShallowC2 ||
      which == Fragment::TwoVariable) {
    int vars = static_cast<int>(all_fo_names(f).size());
    if (vars > 2)
      check.violations.push_back(
          {"", "uses " + std::to_string(vars) + " distinct first-order variables (allowed: 2)"});
  }
  detail::fragment_walk(f, which, arities, "", check);
  check.ok = check.violations.empty();
  return check;
}

}  // namespace splogic
