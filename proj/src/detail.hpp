#pragma once

// Library-internal helpers shared by several translation units.

namespace gmc::detail {

// Turn GSL's abort-on-error handler off once per process; we check status
// codes ourselves.
void gsl_quiet();

}  // namespace gmc::detail
