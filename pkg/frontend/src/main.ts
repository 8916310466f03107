import { Client } from "./api";
import { renderApp } from "./form";
import "./style.css";

const root = document.getElementById("app");
if (root) renderApp(root, new Client());
