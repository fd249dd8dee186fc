#pragma once

#include "germlab/liftable/discriminant.hpp"
#include "germlab/liftable/lift.hpp"
#include "germlab/liftable/vector_field.hpp"
