#pragma once

#include "quasipack/error.hpp"
#include "quasipack/rational.hpp"
#include "quasipack/rng.hpp"
#include "quasipack/text_reader.hpp"
#include "quasipack/hypercore.hpp"
#include "quasipack/layouts.hpp"
#include "quasipack/adapted.hpp"
#include "quasipack/counting.hpp"
#include "quasipack/constructions.hpp"
#include "quasipack/discrepancy.hpp"
#include "quasipack/packing.hpp"
