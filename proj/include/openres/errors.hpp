#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace openres {

using cplx = std::complex<double>;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Iterative method gave up; carries the last iterate and its residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, cplx last, double residual)
        : std::runtime_error(what), last_(last), residual_(residual) {}
    cplx last() const { return last_; }
    double residual() const { return residual_; }

private:
    cplx last_;
    double residual_;
};

class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

}  // namespace openres
