from typing import Dict
from prometheus_client import Counter, Gauge, Histogram, CollectorRegistry, write_to_textfile

class ObservabilityManager:
    """
    Gère l'instrumentation Prometheus des évaluations de cycles et des balayages.
    """

    def __init__(self, registry: CollectorRegistry | None = None) -> None:
        """
        Initialise le gestionnaire d'observabilité.

        Args:
            registry: Registry Prometheus personnalisé. Si None, un registry privé est créé.
        """
        self.registry = registry or CollectorRegistry()

        # Compteur de cycles évalués
        self.cycle_counter = Counter(
            'qheat_cycles_evaluated',
            'Nombre total de cycles évalués',
            ['cycle', 'mode'],
            registry=self.registry
        )

        # Histogramme des durées d'évaluation
        self.evaluation_time = Histogram(
            'qheat_cycle_evaluation_seconds',
            'Durée d\'évaluation d\'un cycle',
            ['cycle'],
            buckets=[0.0005, 0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0],
            registry=self.registry
        )

        # Gauge pour la taille du balayage courant
        self.grid_points = Gauge(
            'qheat_sweep_grid_points',
            'Nombre de points de la grille de balayage',
            registry=self.registry
        )

        # Compteur d'erreurs
        self.error_counter = Counter(
            'qheat_errors',
            'Nombre total d\'erreurs par code',
            ['type'],
            registry=self.registry
        )

    def track_cycle(self, cycle: str, mode: str, duration: float) -> None:
        """
        Enregistre un cycle évalué et sa durée.
        """
        self.cycle_counter.labels(cycle=cycle, mode=mode).inc()
        self.evaluation_time.labels(cycle=cycle).observe(duration)

    def track_error(self, error_type: str) -> None:
        """
        Enregistre une erreur.
        """
        self.error_counter.labels(type=error_type).inc()

    def update_grid_points(self, count: int) -> None:
        """
        Met à jour la taille de la grille.
        """
        self.grid_points.set(count)

    def write_textfile(self, path: str) -> None:
        """
        Écrit les métriques au format texte Prometheus.
        """
        write_to_textfile(path, self.registry)

    def get_metrics(self) -> Dict[str, float]:
        """
        Retourne un résumé des métriques actuelles.
        """
        total_cycles = 0
        total_errors = 0
        evaluation_time_sum = 0
        grid_points_value = 0

        for metric in self.registry.collect():
            if metric.name == "qheat_cycles_evaluated":
                for sample in metric.samples:
                    if sample.name.endswith("_total"):
                        total_cycles += sample.value
            elif metric.name == "qheat_cycle_evaluation_seconds":
                for sample in metric.samples:
                    if sample.name.endswith("_sum"):
                        evaluation_time_sum += sample.value
            elif metric.name == "qheat_sweep_grid_points":
                for sample in metric.samples:
                    grid_points_value = sample.value
            elif metric.name == "qheat_errors":
                for sample in metric.samples:
                    if sample.name.endswith("_total"):
                        total_errors += sample.value

        return {
            'total_cycles': total_cycles,
            'evaluation_time_sum': evaluation_time_sum,
            'sweep_grid_points': grid_points_value,
            'total_errors': total_errors
        }
