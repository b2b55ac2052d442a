#ifndef QINEQ_QINEQ_HPP
#define QINEQ_QINEQ_HPP

#include "bounds.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "log_space.hpp"
#include "qcore.hpp"
#include "report.hpp"
#include "series.hpp"
#include "verify.hpp"

#endif // QINEQ_QINEQ_HPP
