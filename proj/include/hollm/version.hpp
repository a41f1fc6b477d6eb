#pragma once

#define HOLLM_VERSION "0.1.0"
