#ifndef RWTAIL_NORMAL_HPP
#define RWTAIL_NORMAL_HPP

// Standard normal tail helpers accurate far into the upper tail.

namespace rwtail::normal {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double log_pdf(double z);

// log P(Z > z), finite for every finite z (no underflow at z ~ 40).
double log_tail(double z);

// P(Z > z).
double tail(double z);

// z with P(Z > z) = q, q in (0, 1).
double tail_inverse(double q);

// z with log P(Z > z) = log_q, log_q < 0; works below the double range of q.
double tail_inverse_log(double log_q);

} // namespace rwtail::normal

#endif
