#pragma once

#include "mdeq/puiseux.hpp"
#include "mdeq/report.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace mdeq {

/// Atoms available to symbolic form expressions. T is the Hauptmodul 1/lambda
/// and DT its image under D = q d/dq.
enum class FormAtom { E2, E4, E6, Eta, Delta, J, Lambda, Theta2, Theta3, Theta4, T, DT };

const char* atom_name(FormAtom a);
Rational atom_leading_exponent(FormAtom a);

struct FormExpr;
using FormExprPtr = std::shared_ptr<const FormExpr>;

/// Symbolic expression tree over catalog atoms: integer powers, products and
/// polynomials in a single atom. Compiles to a Puiseux series in either the
/// exact-rational or the big-complex coefficient domain.
struct FormExpr {
  struct AtomNode {
    FormAtom atom;
  };
  struct PowNode {
    FormExprPtr base;
    long exponent;
  };
  struct ProductNode {
    std::vector<FormExprPtr> factors;
  };
  struct PolyNode {
    FormAtom atom;
    bool exact;
    std::vector<Rational> qcoeffs;    // used when exact
    std::vector<BigComplex> ccoeffs;  // used when !exact
  };
  std::variant<AtomNode, PowNode, ProductNode, PolyNode> node;
};

FormExprPtr make_atom(FormAtom a);
FormExprPtr make_pow(FormExprPtr base, long exponent);
FormExprPtr make_product(std::vector<FormExprPtr> factors);
/// Polynomial c0 + c1*A + ... + cd*A^d in atom A with exact coefficients.
FormExprPtr make_poly(FormAtom a, std::vector<Rational> coeffs);
FormExprPtr make_poly(FormAtom a, std::vector<BigComplex> coeffs);

Rational predicted_leading_exponent(const FormExprPtr& e);
std::string expr_to_string(const FormExprPtr& e);

// Catalog q-expansions, exact, known at least through q-order `order`.
SeriesQ eisenstein(int weight, long order);
SeriesQ eta_series(long order);
SeriesQ delta_series(long order);
SeriesQ j_series(long order);
SeriesQ theta_series(int which, long order);
SeriesQ lambda_q_series(long order);
SeriesQ hauptmodul_t_series(long order);

SeriesQ atom_series(FormAtom a, long order);
SeriesC atom_series_c(FormAtom a, long order, mpfr_prec_t prec);

SeriesQ compile_exact(const FormExprPtr& e, long order);
SeriesC compile_complex(const FormExprPtr& e, long order, mpfr_prec_t prec);

/// Exact q-expansion identities tying the catalog together (discriminant,
/// J-derivative identities, the lambda/theta relation and the eta-quotient
/// probe for lambda). All comparisons are exact rational equalities.
std::vector<VerificationReport> catalog_identity_reports(long order);

}  // namespace mdeq
