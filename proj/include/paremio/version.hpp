#pragma once

#define PAREMIO_VERSION "0.1.0"
