#pragma once

#include "errors.hpp"
#include "gamma.hpp"
#include "profile.hpp"
#include "core_profiles.hpp"
#include "dop853.hpp"
#include "singular_ode.hpp"
#include "field.hpp"
#include "bounds.hpp"
#include "halfplane.hpp"
#include "classify.hpp"
#include "io.hpp"
#include "svg.hpp"
