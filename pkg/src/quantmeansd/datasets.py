"""Bundled example dataset.

``table_s1`` holds five-number summaries (min, Q1, median, Q3, max) and
sample sizes of PHQ-9 depression screening scores from 58 primary
studies of an individual-participant-data meta-analysis. Scores are
integers on a 0-27 scale and right-skewed, with zeros observed in most
studies, which makes the set a natural stress test for the estimators'
positivity-shift protocol.
"""

from __future__ import annotations

from .summaries import QuantileSummary, Scenario

__all__ = ["table_s1", "FIXTURES"]

# study_id, q_min, q1, q2, q3, q_max, n
_TABLE_S1 = (
    ("Persoons et al. 2001", 0.00, 2.00, 5.00, 9.00, 27.00, 173),
    ("Henkel et al. 2004", 0.00, 3.00, 5.00, 10.00, 25.00, 430),
    ("Grafe et al. 2004", 0.00, 3.00, 7.00, 12.00, 27.00, 494),
    ("Fann et al. 2005", 0.00, 0.00, 4.00, 8.50, 24.00, 135),
    ("Picardi et al. 2005", 0.00, 2.00, 5.00, 10.00, 25.00, 138),
    ("Azah et al. 2005", 0.00, 3.00, 5.00, 8.00, 21.00, 180),
    ("Hahn et al. 2006", 0.00, 5.50, 9.00, 14.00, 26.00, 211),
    ("Eack et al. 2006", 1.00, 4.00, 9.00, 16.25, 24.00, 48),
    ("Muramatsu et al. 2007", 0.00, 3.00, 7.00, 13.00, 27.00, 116),
    ("Stafford et al. 2007", 0.00, 1.00, 3.00, 7.00, 27.00, 193),
    ("Hides et al. 2007", 0.00, 6.00, 13.00, 18.50, 27.00, 103),
    ("Patel et al. 2008", 0.00, 1.00, 4.00, 7.00, 27.00, 299),
    ("Thombs et al. 2008", 0.00, 1.00, 3.00, 8.00, 25.00, 1006),
    ("Lotrakul et al. 2008", 0.00, 3.00, 6.00, 9.00, 24.00, 278),
    ("Lamers et al. 2008", 0.00, 3.00, 5.00, 12.00, 27.00, 104),
    ("Wittkampf et al. 2009", 0.00, 1.00, 4.00, 9.00, 27.00, 260),
    ("Osorio et al. 2009", 0.00, 1.00, 5.00, 14.00, 24.00, 177),
    ("Gjerdingen et al. 2009", 0.00, 1.00, 3.00, 6.00, 27.00, 419),
    ("Richardson et al. 2010", 0.00, 3.00, 7.00, 11.00, 27.00, 377),
    ("van Steenberg-Weijnenburg et al. 2010", 0.00, 2.00, 7.50, 12.00, 27.00, 196),
    ("Arroll et al. 2010", 0.00, 1.00, 3.00, 6.00, 27.00, 2528),
    ("Ayalon et al. 2010", 0.00, 0.00, 2.00, 5.00, 24.00, 151),
    ("Delgadillo et al. 2011", 0.00, 10.00, 13.00, 17.50, 27.00, 103),
    ("Hyphantis et al. 2011", 0.00, 2.00, 5.00, 9.50, 23.00, 213),
    ("Hobfoll et al. 2011", 0.00, 1.00, 4.00, 10.00, 26.00, 144),
    ("Khamseh et al. 2011", 0.00, 6.00, 11.00, 19.00, 27.00, 184),
    ("Liu et al. 2011", 0.00, 0.00, 2.00, 5.00, 25.00, 1532),
    ("Pence et al. 2012", 0.00, 0.00, 1.00, 4.00, 19.00, 398),
    ("Osorio et al. 2012", 0.00, 4.25, 9.00, 15.75, 27.00, 86),
    ("Mohd Sidik et al. 2012", 0.00, 2.00, 3.00, 7.00, 21.00, 146),
    ("Bombardier et al. 2012", 0.00, 2.00, 5.00, 10.00, 27.00, 160),
    ("Sidebottom et al. 2012", 0.00, 2.00, 5.00, 9.00, 26.00, 246),
    ("Turner et al. 2012", 0.00, 2.75, 6.00, 10.00, 26.00, 72),
    ("Williams et al. 2012", 0.00, 2.00, 5.00, 8.00, 21.00, 235),
    ("de Man-van Ginkel et al. 2012", 0.00, 3.00, 6.00, 10.00, 23.00, 164),
    ("Simning et al. 2012", 0.00, 2.00, 4.00, 7.75, 21.00, 190),
    ("Kwan et al. 2012", 0.00, 2.00, 4.00, 8.00, 27.00, 113),
    ("Sung et al. 2013", 0.00, 1.00, 3.00, 6.00, 27.00, 399),
    ("Inagaki et al. 2013", 0.00, 0.00, 2.00, 3.19, 22.00, 104),
    ("Razykov et al. 2013", 0.00, 3.00, 6.00, 10.00, 26.00, 345),
    ("Rooney et al. 2013", 0.00, 3.00, 5.00, 9.00, 25.00, 126),
    ("Vohringer et al. 2013", 0.00, 5.00, 8.00, 14.00, 27.00, 190),
    ("Zhang et al. 2013", 0.00, 2.00, 5.00, 10.00, 26.00, 68),
    ("Twist et al. 2013", 0.00, 0.00, 2.00, 7.00, 27.00, 360),
    ("Chagas et al. 2013", 0.00, 4.00, 7.50, 12.00, 23.00, 84),
    ("Akena et al. 2013", 0.00, 2.00, 6.00, 9.00, 23.00, 91),
    ("Santos et al. 2013", 0.00, 1.00, 4.00, 8.00, 21.00, 196),
    ("McGuire et al. 2013", 0.00, 1.00, 4.00, 8.50, 23.00, 100),
    ("Fischer et al. 2014", 0.00, 1.00, 4.00, 8.00, 27.00, 194),
    ("Gelaye et al. 2014", 0.00, 2.00, 5.00, 10.00, 27.00, 923),
    ("Beraldi et al. 2014", 0.00, 3.00, 6.00, 8.00, 16.00, 116),
    ("Cholera et al. 2014", 0.00, 2.00, 5.00, 9.00, 22.00, 397),
    ("Fiest et al. 2014", 0.00, 1.00, 4.00, 9.00, 26.00, 169),
    ("Hyphantis et al. 2014", 0.00, 2.00, 5.00, 10.00, 27.00, 349),
    ("Kiely et al. 2014", 0.00, 1.00, 3.00, 6.00, 27.00, 822),
    ("Lambert et al. 2015", 0.00, 2.00, 6.00, 10.00, 24.00, 147),
    ("Amoozegar et al. 2017", 0.00, 3.00, 7.00, 12.00, 27.00, 203),
    ("Turner et al. Unpublished", 0.00, 0.50, 3.00, 5.00, 24.00, 51),
)


def table_s1() -> list[tuple[str, QuantileSummary]]:
    """The bundled 58-study PHQ-9 dataset as (study_id, summary) pairs."""
    return [
        (
            sid,
            QuantileSummary(
                scenario=Scenario.S3,
                n=n,
                q_min=q_min,
                q1=q1,
                q2=q2,
                q3=q3,
                q_max=q_max,
            ),
        )
        for sid, q_min, q1, q2, q3, q_max, n in _TABLE_S1
    ]


#: Named fixtures addressable from the command line.
FIXTURES = {"table_s1": table_s1}
