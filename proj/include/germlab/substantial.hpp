#pragma once

#include "germlab/substantial/lambda_jets.hpp"
#include "germlab/substantial/quasi_homogeneity.hpp"
#include "germlab/substantial/unfolding.hpp"
