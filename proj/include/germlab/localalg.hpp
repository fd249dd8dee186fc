#pragma once

#include "germlab/localalg/module_span.hpp"
#include "germlab/localalg/syzygy.hpp"
