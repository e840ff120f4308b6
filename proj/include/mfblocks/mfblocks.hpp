#pragma once

// Umbrella header.

#include "mfblocks/block.hpp"
#include "mfblocks/character.hpp"
#include "mfblocks/field.hpp"
#include "mfblocks/group.hpp"
#include "mfblocks/group_algebra.hpp"
#include "mfblocks/linalg.hpp"
#include "mfblocks/morita.hpp"
#include "mfblocks/numtheory.hpp"
#include "mfblocks/quiver_algebra.hpp"
#include "mfblocks/serialize.hpp"
#include "mfblocks/twisted.hpp"
#include "mfblocks/verify.hpp"
