#pragma once

#define SATFCA_VERSION "0.1.0"

#include "satfca/bitset.hpp"
#include "satfca/builders.hpp"
#include "satfca/context.hpp"
#include "satfca/errors.hpp"
#include "satfca/fca.hpp"
#include "satfca/lattice.hpp"
#include "satfca/oracle.hpp"
#include "satfca/parallel.hpp"
#include "satfca/qstats.hpp"
#include "satfca/transfer.hpp"

namespace satfca {
inline constexpr const char* kVersion = SATFCA_VERSION;
}
