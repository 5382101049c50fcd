#pragma once

#include "cantor_moran/constructions.hpp"
#include "cantor_moran/convergence.hpp"
#include "cantor_moran/cyclotomic.hpp"
#include "cantor_moran/hadamard.hpp"
#include "cantor_moran/interval.hpp"
#include "cantor_moran/kernels.hpp"
#include "cantor_moran/mask.hpp"
#include "cantor_moran/measure.hpp"
#include "cantor_moran/moran_system.hpp"
#include "cantor_moran/rational.hpp"
#include "cantor_moran/series.hpp"
#include "cantor_moran/spectrum.hpp"
#include "cantor_moran/support_dimension.hpp"
#include "cantor_moran/system_io.hpp"
