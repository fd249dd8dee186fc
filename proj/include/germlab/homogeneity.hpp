#pragma once

#include "germlab/homogeneity/functions.hpp"
#include "germlab/homogeneity/poincare_dulac.hpp"
#include "germlab/homogeneity/weights.hpp"
