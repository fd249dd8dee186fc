#pragma once

#include "germlab/exactalg/jet.hpp"
#include "germlab/exactalg/matrix.hpp"
#include "germlab/exactalg/monomial.hpp"
#include "germlab/exactalg/parse.hpp"
#include "germlab/exactalg/polynomial.hpp"
#include "germlab/exactalg/rational.hpp"
#include "germlab/exactalg/resultant.hpp"
#include "germlab/exactalg/sparse.hpp"
#include "germlab/exactalg/spectrum.hpp"
