#pragma once

#include "abdirac/commands.hpp"
#include "abdirac/config_file.hpp"
#include "abdirac/constants.hpp"
#include "abdirac/cylinder.hpp"
#include "abdirac/errors.hpp"
#include "abdirac/gamma.hpp"
#include "abdirac/half_integer.hpp"
#include "abdirac/params.hpp"
#include "abdirac/quadrature.hpp"
#include "abdirac/ring.hpp"
#include "abdirac/spinor.hpp"
#include "abdirac/table.hpp"
#include "abdirac/verify.hpp"
#include "abdirac/wavepacket.hpp"
