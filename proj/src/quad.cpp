#include "heatlab/quad.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace heatlab {

namespace {

double call_thunk(double x, void* params) {
    auto* f = static_cast<const std::function<double(double)>*>(params);
    return (*f)(x);
}

void disable_gsl_abort() {
    static std::once_flag flag;
    std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const {
        gsl_integration_workspace_free(w);
    }
};

constexpr std::size_t kWorkspaceSize = 4000;

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double epsabs, double epsrel) {
    disable_gsl_abort();
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
        gsl_integration_workspace_alloc(kWorkspaceSize));
    gsl_function g;
    g.function = &call_thunk;
    g.params = const_cast<std::function<double(double)>*>(&f);
    QuadResult out;
    int status = gsl_integration_qags(&g, a, b, epsabs, epsrel, kWorkspaceSize,
                                      ws.get(), &out.value, &out.abserr);
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        throw std::runtime_error("quadrature on [" + std::to_string(a) + ", " +
                                 std::to_string(b) +
                                 "] failed: " + gsl_strerror(status));
    }
    return out;
}

QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            double epsabs, double epsrel) {
    disable_gsl_abort();
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
        gsl_integration_workspace_alloc(kWorkspaceSize));
    gsl_function g;
    g.function = &call_thunk;
    g.params = const_cast<std::function<double(double)>*>(&f);
    QuadResult out;
    int status = gsl_integration_qagiu(&g, a, epsabs, epsrel, kWorkspaceSize,
                                       ws.get(), &out.value, &out.abserr);
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        throw std::runtime_error("quadrature on [" + std::to_string(a) +
                                 ", inf) failed: " + gsl_strerror(status));
    }
    return out;
}

QuadResult integrate_oscillatory(const std::function<double(double)>& f, double a,
                                 double b, double omega, bool cosine,
                                 double epsabs, double epsrel) {
    disable_gsl_abort();
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
        gsl_integration_workspace_alloc(kWorkspaceSize));
    gsl_integration_qawo_table* table = gsl_integration_qawo_table_alloc(
        omega, b - a, cosine ? GSL_INTEG_COSINE : GSL_INTEG_SINE, 48);
    gsl_function g;
    g.function = &call_thunk;
    g.params = const_cast<std::function<double(double)>*>(&f);
    QuadResult out;
    int status = gsl_integration_qawo(&g, a, epsabs, epsrel, kWorkspaceSize,
                                      ws.get(), table, &out.value, &out.abserr);
    gsl_integration_qawo_table_free(table);
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        throw std::runtime_error("oscillatory quadrature on [" +
                                 std::to_string(a) + ", " + std::to_string(b) +
                                 "] failed: " + gsl_strerror(status));
    }
    return out;
}

} // namespace heatlab
