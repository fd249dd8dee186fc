#pragma once

#include "germlab/analyzer/germ_file.hpp"
#include "germlab/analyzer/report.hpp"
