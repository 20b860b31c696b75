#pragma once

#include "wirenoise/biot_savart.hpp"
#include "wirenoise/config.hpp"
#include "wirenoise/constants.hpp"
#include "wirenoise/curve.hpp"
#include "wirenoise/design.hpp"
#include "wirenoise/edge_model.hpp"
#include "wirenoise/errors.hpp"
#include "wirenoise/figures.hpp"
#include "wirenoise/profile.hpp"
#include "wirenoise/psd.hpp"
#include "wirenoise/specfun.hpp"
#include "wirenoise/transfer.hpp"
#include "wirenoise/trap_noise.hpp"
#include "wirenoise/units.hpp"
#include "wirenoise/validation.hpp"
#include "wirenoise/version.hpp"
