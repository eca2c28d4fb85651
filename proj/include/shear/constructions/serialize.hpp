#pragma once

// JSON forms so a schedule or nest can be verified by another process.
// Big integers are decimal strings, intervals are [lo, hi] pairs.

#include "shear/constructions/mu.hpp"
#include "shear/constructions/recurrence.hpp"

#include <string>

namespace shear {

std::string theta_to_json(const ThetaSpec &theta);
ThetaRef theta_from_json(const std::string &text);

std::string schedule_to_json(const RecurrenceSchedule &sched);
RecurrenceSchedule schedule_from_json(const std::string &text);

std::string mu_to_json(const MuCertificate &cert);
MuCertificate mu_from_json(const std::string &text);

} // namespace shear
