#pragma once

#include "eqdelta/rational.hpp"
#include "eqdelta/forms.hpp"
#include "eqdelta/contfrac.hpp"
#include "eqdelta/plumbing.hpp"
#include "eqdelta/seifert.hpp"
#include "eqdelta/equivariant.hpp"
#include "eqdelta/classical.hpp"
#include "eqdelta/anchors.hpp"
#include "eqdelta/delta_engine.hpp"
#include "eqdelta/knot_model.hpp"
#include "eqdelta/space.hpp"
#include "eqdelta/derive.hpp"
#include "eqdelta/knots.hpp"
#include "eqdelta/applications.hpp"
