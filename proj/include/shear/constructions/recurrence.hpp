#pragma once

// Recurrence schedule: integers N_p and a subsequence q' of the convergent
// denominators with
//     |1 - e^{2 pi i N_p theta}| + sum_n |1 - e^{2 pi i q'_n N_p theta}| p^{q'_n} <= eps_p.
// Built level by level from the conditions
//   (i)   N_p > N_{p-1}
//   (ii)  the same sum over n < p is <= eps_p / 2
//   (iii) q'_p is a q_n with q_n > q'_{p-1} and q_n >= 2 N_p
//   (iv)  sum_{q_n >= q'_p} p^{q_n} / q_{n+1} <= eps_p / (4 pi N_p).

#include "shear/lacunary.hpp"

namespace shear {

struct RecurrenceLevel {
    long p = 0;
    BigRat eps;
    SymInt N;
    long N_index = -1;  // N = q_{N_index}
    SymInt qprime;
    long qprime_index = -1;
    // Certified upper bounds, log10.
    Real cond_ii_log10;
    Real cond_iv_log10;
    // (ii) + 2 pi N (iv); <= eps by construction.
    Real certificate;
};

struct RecurrenceSchedule {
    ThetaRef theta;
    std::vector<RecurrenceLevel> levels;  // p = 1, 2, ...

    long p_max() const { return static_cast<long>(levels.size()); }
    // q'_0 = q_0 followed by q'_1, q'_2, ...
    std::vector<long> qprime_indices() const;
    ExponentSubseq qprime() const;
    // N_0 = 1 followed by N_1, N_2, ...
    std::vector<SymInt> Ns() const;
    const RecurrenceLevel &level(long p) const;
};

// eps_p = 2^{-p} for p = 1..p_max.
std::vector<BigRat> default_eps(long p_max);

// eps[p-1] is eps_p. N_p and q'_p are searched among the next `span`
// convergent denominators. Throws search-exhausted naming the failing
// condition.
RecurrenceSchedule build_recurrence(const ThetaRef &theta, const std::vector<BigRat> &eps, long p_max, long span = 12);
// Same, but stops at the first failing level and reports it in *failure.
RecurrenceSchedule build_recurrence_prefix(const ThetaRef &theta, const std::vector<BigRat> &eps, long p_max,
                                           std::string *failure, long span = 12);

// log10 upper bound on sum_{j >= k} p^{q_j} / q_{j+1}; +inf if not certifiable.
Real convergent_tail_log10(const ThetaSpec &theta, long k, long p);

struct RecurrenceCheck {
    long p = 0;
    long M = 0;
    std::vector<Real> head_log10;  // |1 - e(N theta)|, then entries n <= M
    Real head;
    Real tail;   // every entry after M, for any continuation of q'
    Real bound;  // head + tail
    BigRat eps;
    bool pass = false;
};

// Recomputes the master sum for level p: head terms from rational phase
// enclosures where the integers are exact, log-space bounds otherwise, and
// the lacunary tail estimate past entry M.
RecurrenceCheck verify_recurrence(const RecurrenceSchedule &sched, long p, long M);

} // namespace shear
