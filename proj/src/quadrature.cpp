#include "hqc/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <string>

#include "hqc/error.hpp"

namespace hqc::quad {
namespace {

struct GslTableDeleter {
  void operator()(gsl_integration_glfixed_table* t) const {
    gsl_integration_glfixed_table_free(t);
  }
};

struct GslWorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};

// GSL's default handler aborts; errors are reported through status codes.
struct DisableGslAbort {
  DisableGslAbort() { gsl_set_error_handler_off(); }
};
const DisableGslAbort disable_gsl_abort;

constexpr std::size_t kWorkspaceSize = 2000;

}  // namespace

Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw Error(ErrorKind::validation, "Gauss-Legendre order must be >= 1");
  std::unique_ptr<gsl_integration_glfixed_table, GslTableDeleter> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)));
  if (!table) throw Error(ErrorKind::convergence, "failed to build Gauss-Legendre table");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &rule.nodes[i],
                                  &rule.weights[i], table.get());
  }
  return rule;
}

Rule composite_gauss_legendre(int n, const std::vector<double>& breaks) {
  Rule out;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    Rule piece = gauss_legendre(n, breaks[k], breaks[k + 1]);
    out.nodes.insert(out.nodes.end(), piece.nodes.begin(), piece.nodes.end());
    out.weights.insert(out.weights.end(), piece.weights.begin(), piece.weights.end());
  }
  return out;
}

AdaptiveResult integrate(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, double rel_tol) {
  std::unique_ptr<gsl_integration_workspace, GslWorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(kWorkspaceSize));
  gsl_function fn;
  fn.function = [](double x, void* p) {
    return (*static_cast<const std::function<double(double)>*>(p))(x);
  };
  fn.params = const_cast<std::function<double(double)>*>(&f);
  AdaptiveResult r{};
  const int status = gsl_integration_qag(&fn, a, b, abs_tol, rel_tol, kWorkspaceSize,
                                         GSL_INTEG_GAUSS61, ws.get(), &r.value,
                                         &r.abs_error);
  if (status != GSL_SUCCESS) {
    throw Error(ErrorKind::convergence,
                std::string("adaptive quadrature failed: ") + gsl_strerror(status));
  }
  return r;
}

}  // namespace hqc::quad
