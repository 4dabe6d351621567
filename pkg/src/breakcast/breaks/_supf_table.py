"""Asymptotic critical values for the sequential sup-F(l+1 | l) test.

Generated by scripts/gen_supf_table.py: Monte Carlo over
100000 Brownian-bridge paths on a 2000-point grid (seed 20240604).
Key: (q, trimming, alpha) -> critical value for l = 0, 1, ..., 9.
The statistic is not divided by q. For q = 1, trimming 0.15, alpha 0.05
these sit within 0.15 of the published Bai-Perron (2003) values
(8.58, 10.13, 11.14, 11.83, 12.25).
"""

SUPF_CRITICAL: dict[tuple[int, float, float], tuple[float, ...]] = {
    (1, 0.05, 0.1): (8.13, 9.64, 10.55, 11.14, 11.64, 12.03, 12.37, 12.61, 12.9, 13.12),
    (1, 0.05, 0.05): (9.7, 11.2, 12.08, 12.67, 13.19, 13.52, 13.84, 14.15, 14.39, 14.61),
    (1, 0.05, 0.025): (11.24, 12.71, 13.55, 14.17, 14.64, 15.04, 15.35, 15.61, 15.87, 16.09),
    (1, 0.05, 0.01): (13.24, 14.68, 15.54, 16.09, 16.56, 17.08, 17.34, 17.57, 17.77, 18.06),
    (1, 0.1, 0.1): (7.58, 9.11, 9.99, 10.63, 11.09, 11.49, 11.82, 12.08, 12.34, 12.55),
    (1, 0.1, 0.05): (9.16, 10.68, 11.54, 12.13, 12.61, 13.01, 13.33, 13.57, 13.79, 13.96),
    (1, 0.1, 0.025): (10.71, 12.15, 13.04, 13.58, 13.98, 14.4, 14.78, 15.04, 15.27, 15.52),
    (1, 0.1, 0.01): (12.66, 14.0, 14.92, 15.53, 15.96, 16.33, 16.69, 17.08, 17.22, 17.41),
    (1, 0.15, 0.1): (7.15, 8.65, 9.54, 10.17, 10.65, 11.04, 11.36, 11.66, 11.91, 12.13),
    (1, 0.15, 0.05): (8.7, 10.23, 11.1, 11.7, 12.17, 12.57, 12.9, 13.15, 13.38, 13.57),
    (1, 0.15, 0.025): (10.26, 11.73, 12.61, 13.19, 13.58, 13.9, 14.25, 14.47, 14.8, 15.02),
    (1, 0.15, 0.01): (12.23, 13.58, 14.39, 15.02, 15.48, 15.74, 16.03, 16.3, 16.52, 16.89),
    (1, 0.2, 0.1): (6.77, 8.25, 9.12, 9.75, 10.25, 10.65, 10.98, 11.26, 11.49, 11.72),
    (1, 0.2, 0.05): (8.3, 9.8, 10.7, 11.31, 11.78, 12.13, 12.5, 12.74, 12.96, 13.2),
    (1, 0.2, 0.025): (9.83, 11.33, 12.16, 12.76, 13.24, 13.58, 13.85, 14.08, 14.39, 14.65),
    (1, 0.2, 0.01): (11.82, 13.26, 13.95, 14.69, 15.12, 15.53, 15.76, 16.02, 16.24, 16.44),
    (1, 0.25, 0.1): (6.4, 7.84, 8.71, 9.32, 9.8, 10.21, 10.54, 10.83, 11.07, 11.29),
    (1, 0.25, 0.05): (7.9, 9.38, 10.27, 10.89, 11.34, 11.72, 12.03, 12.34, 12.55, 12.8),
    (1, 0.25, 0.025): (9.4, 10.92, 11.75, 12.38, 12.86, 13.24, 13.51, 13.71, 13.94, 14.18),
    (1, 0.25, 0.01): (11.38, 12.87, 13.62, 14.18, 14.73, 15.19, 15.49, 15.69, 15.89, 16.15),
    (2, 0.05, 0.1): (11.04, 12.66, 13.6, 14.21, 14.74, 15.15, 15.49, 15.81, 16.08, 16.31),
    (2, 0.05, 0.05): (12.72, 14.27, 15.19, 15.88, 16.38, 16.78, 17.18, 17.49, 17.76, 18.04),
    (2, 0.05, 0.025): (14.29, 15.9, 16.82, 17.51, 18.05, 18.39, 18.73, 19.0, 19.17, 19.43),
    (2, 0.05, 0.01): (16.43, 18.06, 18.86, 19.44, 20.09, 20.45, 21.03, 21.35, 21.57, 21.88),
    (2, 0.1, 0.1): (10.44, 12.04, 13.01, 13.67, 14.14, 14.54, 14.91, 15.19, 15.47, 15.72),
    (2, 0.1, 0.05): (12.11, 13.72, 14.62, 15.25, 15.78, 16.17, 16.54, 16.84, 17.14, 17.43),
    (2, 0.1, 0.025): (13.75, 15.28, 16.21, 16.87, 17.45, 17.85, 18.2, 18.44, 18.67, 18.83),
    (2, 0.1, 0.01): (15.82, 17.46, 18.34, 18.86, 19.32, 19.74, 20.18, 20.4, 20.75, 21.09),
    (2, 0.15, 0.1): (9.95, 11.58, 12.53, 13.21, 13.69, 14.09, 14.43, 14.77, 14.99, 15.21),
    (2, 0.15, 0.05): (11.65, 13.27, 14.14, 14.81, 15.28, 15.73, 16.08, 16.38, 16.62, 16.89),
    (2, 0.15, 0.025): (13.29, 14.84, 15.76, 16.42, 16.92, 17.4, 17.74, 18.05, 18.32, 18.47),
    (2, 0.15, 0.01): (15.32, 16.93, 17.93, 18.49, 18.95, 19.35, 19.74, 20.08, 20.31, 20.48),
    (2, 0.2, 0.1): (9.51, 11.16, 12.09, 12.77, 13.28, 13.67, 13.97, 14.27, 14.53, 14.79),
    (2, 0.2, 0.05): (11.22, 12.83, 13.72, 14.32, 14.85, 15.23, 15.6, 15.93, 16.18, 16.43),
    (2, 0.2, 0.025): (12.86, 14.34, 15.28, 15.97, 16.47, 16.92, 17.31, 17.62, 17.89, 18.06),
    (2, 0.2, 0.01): (14.89, 16.49, 17.47, 18.11, 18.49, 18.94, 19.27, 19.56, 19.96, 20.2),
    (2, 0.25, 0.1): (9.08, 10.72, 11.66, 12.33, 12.85, 13.26, 13.59, 13.88, 14.13, 14.34),
    (2, 0.25, 0.05): (10.77, 12.4, 13.31, 13.92, 14.39, 14.83, 15.16, 15.45, 15.75, 15.99),
    (2, 0.25, 0.025): (12.42, 13.95, 14.86, 15.47, 16.01, 16.43, 16.81, 17.05, 17.39, 17.61),
    (2, 0.25, 0.01): (14.44, 16.02, 16.93, 17.62, 18.15, 18.37, 18.76, 19.09, 19.33, 19.53),
    (3, 0.05, 0.1): (13.37, 15.19, 16.19, 16.89, 17.43, 17.88, 18.23, 18.55, 18.86, 19.08),
    (3, 0.05, 0.05): (15.25, 16.95, 17.93, 18.63, 19.16, 19.57, 19.95, 20.27, 20.53, 20.77),
    (3, 0.05, 0.025): (16.98, 18.67, 19.6, 20.31, 20.8, 21.23, 21.61, 21.9, 22.14, 22.36),
    (3, 0.05, 0.01): (19.2, 20.82, 21.8, 22.37, 22.82, 23.38, 23.75, 24.06, 24.41, 24.64),
    (3, 0.1, 0.1): (12.73, 14.55, 15.6, 16.29, 16.84, 17.29, 17.64, 17.95, 18.26, 18.5),
    (3, 0.1, 0.05): (14.62, 16.37, 17.35, 18.04, 18.57, 19.01, 19.32, 19.69, 20.01, 20.25),
    (3, 0.1, 0.025): (16.41, 18.08, 19.04, 19.72, 20.27, 20.62, 20.99, 21.36, 21.64, 21.87),
    (3, 0.1, 0.01): (18.63, 20.3, 21.23, 21.88, 22.32, 22.63, 23.12, 23.46, 23.71, 23.96),
    (3, 0.15, 0.1): (12.23, 14.03, 15.08, 15.8, 16.33, 16.77, 17.14, 17.47, 17.76, 18.03),
    (3, 0.15, 0.05): (14.1, 15.86, 16.82, 17.54, 18.1, 18.5, 18.89, 19.17, 19.43, 19.69),
    (3, 0.15, 0.025): (15.9, 17.56, 18.54, 19.2, 19.72, 20.15, 20.51, 20.76, 21.04, 21.36),
    (3, 0.15, 0.01): (18.14, 19.73, 20.62, 21.38, 21.95, 22.35, 22.62, 22.93, 23.24, 23.57),
    (3, 0.2, 0.1): (11.75, 13.56, 14.56, 15.3, 15.85, 16.29, 16.68, 16.97, 17.27, 17.5),
    (3, 0.2, 0.05): (13.63, 15.36, 16.36, 17.02, 17.56, 18.02, 18.4, 18.72, 18.99, 19.2),
    (3, 0.2, 0.025): (15.39, 17.05, 18.05, 18.76, 19.22, 19.71, 20.1, 20.4, 20.62, 20.84),
    (3, 0.2, 0.01): (17.61, 19.23, 20.23, 20.86, 21.42, 21.88, 22.2, 22.5, 22.67, 22.9),
    (3, 0.25, 0.1): (11.26, 13.04, 14.05, 14.79, 15.35, 15.81, 16.17, 16.51, 16.79, 17.02),
    (3, 0.25, 0.05): (13.11, 14.87, 15.87, 16.57, 17.08, 17.54, 17.92, 18.23, 18.5, 18.8),
    (3, 0.25, 0.025): (14.9, 16.61, 17.56, 18.26, 18.83, 19.18, 19.58, 19.92, 20.19, 20.41),
    (3, 0.25, 0.01): (17.15, 18.84, 19.74, 20.43, 20.84, 21.3, 21.79, 22.04, 22.36, 22.5),
    (4, 0.05, 0.1): (15.48, 17.36, 18.41, 19.16, 19.78, 20.2, 20.6, 20.96, 21.25, 21.52),
    (4, 0.05, 0.05): (17.43, 19.23, 20.28, 21.04, 21.58, 22.06, 22.47, 22.84, 23.12, 23.43),
    (4, 0.05, 0.025): (19.26, 21.06, 22.1, 22.86, 23.47, 23.88, 24.21, 24.63, 24.97, 25.17),
    (4, 0.05, 0.01): (21.62, 23.48, 24.39, 25.18, 25.68, 26.0, 26.38, 26.73, 27.06, 27.2),
    (4, 0.1, 0.1): (14.8, 16.68, 17.75, 18.44, 19.02, 19.5, 19.88, 20.19, 20.5, 20.8),
    (4, 0.1, 0.05): (16.75, 18.5, 19.56, 20.27, 20.86, 21.31, 21.7, 22.01, 22.35, 22.66),
    (4, 0.1, 0.025): (18.54, 20.32, 21.34, 22.06, 22.68, 23.14, 23.59, 23.86, 24.1, 24.39),
    (4, 0.1, 0.01): (20.91, 22.69, 23.75, 24.4, 25.09, 25.53, 25.75, 25.96, 26.22, 26.58),
    (4, 0.15, 0.1): (14.26, 16.1, 17.18, 17.94, 18.47, 18.94, 19.29, 19.65, 19.92, 20.15),
    (4, 0.15, 0.05): (16.17, 18.02, 19.0, 19.72, 20.2, 20.69, 21.07, 21.44, 21.71, 21.97),
    (4, 0.15, 0.025): (18.05, 19.74, 20.72, 21.49, 22.01, 22.54, 22.9, 23.33, 23.64, 23.89),
    (4, 0.15, 0.01): (20.27, 22.04, 23.16, 23.91, 24.45, 24.94, 25.34, 25.64, 25.84, 25.96),
    (4, 0.2, 0.1): (13.78, 15.61, 16.67, 17.4, 18.01, 18.43, 18.79, 19.12, 19.42, 19.67),
    (4, 0.2, 0.05): (15.69, 17.49, 18.49, 19.19, 19.74, 20.14, 20.55, 20.89, 21.19, 21.5),
    (4, 0.2, 0.025): (17.53, 19.21, 20.16, 20.93, 21.52, 21.93, 22.35, 22.74, 23.06, 23.41),
    (4, 0.2, 0.01): (19.79, 21.54, 22.59, 23.43, 23.95, 24.41, 24.93, 25.26, 25.56, 25.74),
    (4, 0.25, 0.1): (13.26, 15.11, 16.18, 16.94, 17.51, 17.98, 18.36, 18.64, 18.94, 19.19),
    (4, 0.25, 0.05): (15.19, 17.0, 18.04, 18.71, 19.25, 19.7, 20.05, 20.39, 20.7, 20.95),
    (4, 0.25, 0.025): (17.03, 18.74, 19.73, 20.41, 20.98, 21.44, 21.75, 22.12, 22.42, 22.74),
    (4, 0.25, 0.01): (19.3, 21.0, 21.93, 22.74, 23.28, 23.78, 24.19, 24.61, 24.93, 25.17),
    (5, 0.05, 0.1): (17.53, 19.47, 20.59, 21.39, 22.02, 22.47, 22.84, 23.19, 23.48, 23.74),
    (5, 0.05, 0.05): (19.54, 21.46, 22.55, 23.24, 23.81, 24.22, 24.58, 24.9, 25.15, 25.37),
    (5, 0.05, 0.025): (21.49, 23.28, 24.26, 24.93, 25.42, 25.87, 26.22, 26.49, 26.77, 27.05),
    (5, 0.05, 0.01): (23.85, 25.43, 26.37, 27.06, 27.67, 28.06, 28.37, 28.67, 28.9, 29.28),
    (5, 0.1, 0.1): (16.81, 18.75, 19.86, 20.65, 21.3, 21.78, 22.22, 22.55, 22.82, 23.09),
    (5, 0.1, 0.05): (18.81, 20.72, 21.85, 22.61, 23.14, 23.58, 24.0, 24.3, 24.59, 24.83),
    (5, 0.1, 0.025): (20.76, 22.64, 23.62, 24.32, 24.87, 25.28, 25.65, 25.98, 26.27, 26.48),
    (5, 0.1, 0.01): (23.19, 24.88, 25.85, 26.49, 27.05, 27.49, 27.81, 28.08, 28.31, 28.56),
    (5, 0.15, 0.1): (16.21, 18.14, 19.27, 20.09, 20.68, 21.23, 21.65, 22.03, 22.35, 22.62),
    (5, 0.15, 0.05): (18.21, 20.16, 21.32, 22.12, 22.68, 23.11, 23.46, 23.83, 24.08, 24.3),
    (5, 0.15, 0.025): (20.21, 22.15, 23.13, 23.84, 24.32, 24.78, 25.11, 25.33, 25.62, 25.89),
    (5, 0.15, 0.01): (22.72, 24.33, 25.25, 25.92, 26.38, 26.81, 27.16, 27.56, 27.8, 28.01),
    (5, 0.2, 0.1): (15.69, 17.63, 18.77, 19.55, 20.17, 20.64, 21.11, 21.5, 21.8, 22.11),
    (5, 0.2, 0.05): (17.71, 19.63, 20.71, 21.55, 22.19, 22.64, 22.98, 23.28, 23.61, 23.93),
    (5, 0.2, 0.025): (19.67, 21.59, 22.68, 23.31, 23.95, 24.36, 24.75, 25.04, 25.27, 25.52),
    (5, 0.2, 0.01): (22.24, 23.96, 24.9, 25.53, 26.04, 26.45, 26.77, 27.14, 27.47, 27.71),
    (5, 0.25, 0.1): (15.16, 17.15, 18.24, 19.04, 19.66, 20.14, 20.53, 20.9, 21.26, 21.56),
    (5, 0.25, 0.05): (17.23, 19.11, 20.23, 20.98, 21.64, 22.13, 22.54, 22.82, 23.12, 23.4),
    (5, 0.25, 0.025): (19.16, 21.02, 22.18, 22.86, 23.45, 23.98, 24.29, 24.6, 24.89, 25.16),
    (5, 0.25, 0.01): (21.69, 23.47, 24.47, 25.17, 25.61, 26.03, 26.4, 26.72, 27.05, 27.3),
}
