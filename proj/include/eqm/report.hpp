#pragma once

#include <string>

#include "eqm/group.hpp"
#include "eqm/serialize.hpp"

namespace eqm::recon {

/// Full verification report for a conceptual-variable system: permissibility
/// and induced groups per variable, the generating assumption, orbits, the
/// function-space construction, question-answer checks with witnesses, the
/// answer-value operator's spectrum, and the group-average identity (run on
/// each orbit separately when the action is not transitive).
io::Json reconstruction_report(const core::EVariableSystem& system,
                               const std::string& theta0,
                               const std::string& fixture_name = "");

}  // namespace eqm::recon
