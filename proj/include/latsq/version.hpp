#pragma once

#define LATSQ_VERSION "0.1.0"
