#pragma once

#include <optional>

#include "qprobe/program.hpp"

namespace qprobe {

// Adjoint of a measurement-free subroutine: statements reversed and
// individually inverted (R1 negates its angle, S/T swap with their daggers,
// loops iterate in reverse, nested calls toggle their inverse tag). Classical
// assignments are hoisted to the front of their block so that inverted
// statements still see their values; a name assigned twice in one block is
// rejected.
SubroutineDef derive_inverse(const SubroutineDef& sub);

// Adds a leading control-qubit-array parameter; every gate and call in the
// body gains it. `num_controls` fixes the declared length of that array.
SubroutineDef derive_controlled(const SubroutineDef& sub, int num_controls);

// As above but the control array accepts any length; used when resolving
// `call X[ctl]` statements, where the control register size is a call-site
// property.
SubroutineDef derive_controlled_dynamic(const SubroutineDef& sub);

// Wraps `sub` with a leading `power` parameter: applies it `power` times,
// or its inverse |power| times when negative; power 0 is the identity.
// `inverse` documents the inverse's signature and must match; the generated
// body calls `sub` by name (with an inverse tag for the negative branch), so
// it must live in the same program as `sub`.
SubroutineDef derive_power(const SubroutineDef& sub,
                           const SubroutineDef& inverse);

}  // namespace qprobe
