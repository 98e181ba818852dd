#pragma once

#include "ncps/errors.hpp"
#include "ncps/signal.hpp"
#include "ncps/nc_model.hpp"
#include "ncps/rk4.hpp"
#include "ncps/dynamics.hpp"
#include "ncps/special.hpp"
#include "ncps/grid.hpp"
#include "ncps/fourier.hpp"
#include "ncps/wavefunctions.hpp"
#include "ncps/infotheory.hpp"
#include "ncps/validation.hpp"
#include "ncps/config.hpp"
#include "ncps/sweep.hpp"
#include "ncps/verify.hpp"
