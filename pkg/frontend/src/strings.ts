import type { Language, VisualizationMode } from "./messages.js";

// Two-language string table. The session reports its language in every
// snapshot; the UI just looks labels up, it never stores a language itself.

export interface MenuEntryDef {
  id: "reset" | "audio" | "mode_standard" | "mode_traversable" | "mode_lidar" | "language";
  label: string;
}

const TABLES = {
  DE: {
    menu_reset: "Roboter zurücksetzen",
    menu_audio: "Audiokommentar",
    menu_mode_standard: "Standardansicht",
    menu_mode_traversable: "Befahrbare Fläche",
    menu_mode_lidar: "LiDAR-Ansicht",
    menu_language: "Sprache: Deutsch",
    toast_disconnected: "Keine Verbindung: Eingabe verworfen",
    toast_audio: "Audiokommentar gestartet",
    banner_connecting: "Verbinde mit der Sitzung…",
    banner_error: "Verbindungsfehler",
    banner_waiting: "Warte auf Daten…",
  },
  EN: {
    menu_reset: "Reset robot",
    menu_audio: "Audio commentary",
    menu_mode_standard: "Standard view",
    menu_mode_traversable: "Traversable area",
    menu_mode_lidar: "LiDAR view",
    menu_language: "Language: English",
    toast_disconnected: "Not connected: input dropped",
    toast_audio: "Audio commentary started",
    banner_connecting: "Connecting to session…",
    banner_error: "Connection error",
    banner_waiting: "Waiting for data…",
  },
} as const;

export type StringKey = keyof (typeof TABLES)["DE"];

export function lookup(language: Language, key: StringKey): string {
  return TABLES[language][key];
}

export function menuEntries(language: Language): MenuEntryDef[] {
  return [
    { id: "reset", label: lookup(language, "menu_reset") },
    { id: "audio", label: lookup(language, "menu_audio") },
    { id: "mode_standard", label: lookup(language, "menu_mode_standard") },
    { id: "mode_traversable", label: lookup(language, "menu_mode_traversable") },
    { id: "mode_lidar", label: lookup(language, "menu_mode_lidar") },
    { id: "language", label: lookup(language, "menu_language") },
  ];
}

export const MODE_FOR_ENTRY: Partial<Record<MenuEntryDef["id"], VisualizationMode>> = {
  mode_standard: "Standard",
  mode_traversable: "TraversableOverlay",
  mode_lidar: "LidarMode",
};
