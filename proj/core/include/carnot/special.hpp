#pragma once

namespace carnot::special {

/// sin(u)/u.
double sinc(double u);
/// (sin u - u cos u)/u^3.
double cfun(double u);
/// (w - sin w)/w^3.
double kfun(double w);
/// d/dw of kfun.
double kfun_prime(double w);

}  // namespace carnot::special
