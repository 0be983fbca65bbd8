#pragma once

#include "chaosbox/binary_poly.hpp"
#include "chaosbox/cipher.hpp"
#include "chaosbox/error.hpp"
#include "chaosbox/gf2n.hpp"
#include "chaosbox/golden.hpp"
#include "chaosbox/keyfile.hpp"
#include "chaosbox/lorenz.hpp"
#include "chaosbox/metrics.hpp"
#include "chaosbox/netpbm.hpp"
#include "chaosbox/polyfind.hpp"
#include "chaosbox/sbox.hpp"
#include "chaosbox/sbox_analysis.hpp"
#include "chaosbox/sbox_io.hpp"
