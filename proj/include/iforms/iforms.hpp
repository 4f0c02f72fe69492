#pragma once

// Umbrella header.

#include "iforms/biform.hpp"
#include "iforms/dsl.hpp"
#include "iforms/error.hpp"
#include "iforms/exterior.hpp"
#include "iforms/formspace.hpp"
#include "iforms/gv.hpp"
#include "iforms/lie.hpp"
#include "iforms/mpoly.hpp"
#include "iforms/qmatrix.hpp"
#include "iforms/rational.hpp"
#include "iforms/steiner.hpp"
#include "iforms/version.hpp"
