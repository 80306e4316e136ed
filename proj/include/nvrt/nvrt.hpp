#ifndef NVRT_NVRT_HPP
#define NVRT_NVRT_HPP

#include "nvrt/circle.hpp"
#include "nvrt/io.hpp"

#endif
